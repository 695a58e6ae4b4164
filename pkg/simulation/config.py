"""
Experiment definitions.

Experiments live in INI files: a [DEFAULT] section with shared keys and one
section per experiment. Keys:

    dist          compact distribution text, e.g. dagum:sigma=1,a=2,b=0.5
    sample_sizes  comma separated counts
    schemes       comma separated subset of E, H, HF, WG
    replications  replicates per sample size (default 1000)
    master_seed   unsigned 64-bit seed
    mise_grid     midpoint nodes for the MISE integral (default 512)
    kinds         comma separated subset of qZI, qDI
    keep_raw      retain per-replicate estimates (default false)
"""

import configparser
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

from core.exceptions import InvalidParameterError
from distributions.families import ParametricDistribution
from distributions.parsing import parse_distribution
from distributions.random import UINT64_MAX
from estimators.quantiles import QuantileScheme
from indices.kinds import CLOSED_FORM_KINDS, IndexKind

DEFAULT_REPLICATIONS = 1000
DEFAULT_MISE_GRID = 512
MIN_MISE_GRID = 16


@dataclass(frozen=True)
class SimulationConfig:
    dist: ParametricDistribution
    sample_sizes: Tuple[int, ...]
    schemes: Tuple[QuantileScheme, ...]
    master_seed: int
    replications: int = DEFAULT_REPLICATIONS
    mise_grid: int = DEFAULT_MISE_GRID
    kinds: Tuple[IndexKind, ...] = CLOSED_FORM_KINDS
    keep_raw: bool = False
    name: str = 'experiment'

    def __post_init__(self):
        if not self.sample_sizes:
            raise InvalidParameterError(f"[{self.name}] sample_sizes must not be empty")
        if any(int(n) != n or n < 1 for n in self.sample_sizes):
            raise InvalidParameterError(f"[{self.name}] sample sizes must be positive integers")
        if len(set(self.sample_sizes)) != len(self.sample_sizes):
            raise InvalidParameterError(f"[{self.name}] sample sizes must be distinct")
        if not self.schemes:
            raise InvalidParameterError(f"[{self.name}] schemes must not be empty")
        if not self.kinds or any(kind not in CLOSED_FORM_KINDS for kind in self.kinds):
            raise InvalidParameterError(f"[{self.name}] kinds must be a non-empty subset of qZI, qDI")
        if self.replications < 1:
            raise InvalidParameterError(f"[{self.name}] replications must be at least 1")
        if self.mise_grid < MIN_MISE_GRID:
            raise InvalidParameterError(f"[{self.name}] mise_grid must be at least {MIN_MISE_GRID}")
        if not 0 <= self.master_seed <= UINT64_MAX:
            raise InvalidParameterError(f"[{self.name}] master_seed must be an unsigned 64-bit integer")


def _split(value):
    return [item.strip() for item in value.split(',') if item.strip()]


def _integer(section, key, raw):
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"[{section}] {key} must be an integer, got {raw!r}")


def config_from_section(name, values, seed=None):
    """
    Build a SimulationConfig from one parsed section. ``seed`` overrides the
    section's master_seed; one of the two must be present.
    """
    if 'dist' not in values:
        raise InvalidParameterError(f"[{name}] dist is required")
    if seed is None and not values.get('master_seed'):
        raise InvalidParameterError(f"[{name}] master_seed is missing; pass --seed")
    master_seed = seed if seed is not None else _integer(name, 'master_seed', values['master_seed'])

    sizes = tuple(_integer(name, 'sample_sizes', item) for item in _split(values.get('sample_sizes', '')))
    schemes = tuple(QuantileScheme.parse(item) for item in _split(values.get('schemes', 'E,H,HF,WG')))
    kinds = tuple(IndexKind.parse(item) for item in _split(values.get('kinds', 'qZI,qDI')))
    keep_raw = str(values.get('keep_raw', 'false')).strip().lower() in ('1', 'true', 'yes', 'on')

    return SimulationConfig(
        name=name,
        dist=parse_distribution(values['dist']),
        sample_sizes=sizes,
        schemes=schemes,
        master_seed=int(master_seed),
        replications=_integer(name, 'replications', values.get('replications', DEFAULT_REPLICATIONS)),
        mise_grid=_integer(name, 'mise_grid', values.get('mise_grid', DEFAULT_MISE_GRID)),
        kinds=kinds,
        keep_raw=keep_raw,
    )


def load_configs(path, sections=None, seed=None):
    """
    Read experiment sections from an INI file, in file order unless
    ``sections`` names a subset.
    """
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with path.open(encoding='utf-8') as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise InvalidParameterError(f"cannot read experiment file {path}: {exc}")
    except configparser.Error as exc:
        raise InvalidParameterError(f"malformed experiment file {path}: {exc}")

    available = parser.sections()
    if not available:
        raise InvalidParameterError(f"{path} defines no experiment sections")
    chosen = list(sections) if sections else available
    unknown = [name for name in chosen if name not in available]
    if unknown:
        raise InvalidParameterError(f"unknown experiment section(s): {', '.join(unknown)}")
    return [config_from_section(name, dict(parser[name]), seed) for name in chosen]

