"""
Monte Carlo experiment runner.

For every sample size n and replicate i a sample is drawn with the seed
words (master_seed, n, i), so replicates never depend on each other or on
the order they run in. Every scheme is applied to the same sample. Results
are reduced in replicate order, which keeps reports bit-identical for any
worker count.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Tuple

import numpy as np

from core.exceptions import InvalidParameterError, ReplicateError
from curves.kinds import CurveKind
from curves.quantile_curves import curve_values
from curves.tables import uniform_grid
from distributions.random import replicate_seed
from estimators.quantiles import QuantileEstimate, QuantileScheme
from indices.closed_form import index_estimate_closed_form
from indices.exact import index_exact
from indices.kinds import IndexKind

from .config import DEFAULT_MISE_GRID, SimulationConfig

logger = logging.getLogger(__name__)

MISE_KINDS = (CurveKind.QZ, CurveKind.QD)


@dataclass(frozen=True)
class CellSummary:
    """
    Aggregate over replicates for one (index kind, scheme, sample size)
    """
    kind: IndexKind
    scheme: QuantileScheme
    sample_size: int
    exact_index: float
    index_median: float
    index_q1: float
    index_q3: float
    index_mse: float
    curve_mise: float
    replications: int

    @property
    def curve(self):
        return self.kind.curve

    @property
    def index_iqr(self):
        return self.index_q3 - self.index_q1


@dataclass
class SimulationReport:
    config: SimulationConfig
    exact_index: Dict[IndexKind, float]
    cells: List[CellSummary]
    raw: List[dict] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def cell(self, kind, scheme, sample_size):
        kind = IndexKind.parse(kind)
        scheme = QuantileScheme.parse(scheme)
        for cell in self.cells:
            if cell.kind is kind and cell.scheme is scheme and cell.sample_size == sample_size:
                return cell
        raise KeyError((kind, scheme, sample_size))


def _mise(est, kind, grid, exact_values):
    difference = curve_values(est, kind, grid) - exact_values
    return float(np.mean(difference * difference))


def mise_single(sample, scheme, kind, dist, grid_size=DEFAULT_MISE_GRID, exact_values=None):
    """
    Integrated squared error of the plug-in ``kind`` curve against the exact
    curve of ``dist``, by the midpoint rule on ``grid_size`` nodes.
    """
    kind = CurveKind.parse(kind)
    if kind not in MISE_KINDS:
        raise InvalidParameterError(f"MISE is defined for qZ and qD, not {kind}")
    grid = uniform_grid(grid_size)
    if exact_values is None:
        exact_values = curve_values(dist, kind, grid)
    return _mise(QuantileEstimate(sample, scheme), kind, grid, exact_values)


def _replicate(config, grid, exact_curves, sample_size, replicate) -> Dict[Tuple, Tuple[float, float]]:
    seed = replicate_seed(config.master_seed, sample_size, replicate)
    try:
        sample = config.dist.sample(sample_size, seed)
    except Exception as exc:
        raise ReplicateError(sample_size, replicate, 'sampling', exc) from exc

    results = {}
    for scheme in config.schemes:
        try:
            est = QuantileEstimate(sample, scheme)
            for kind in config.kinds:
                value = index_estimate_closed_form(sample, scheme, kind).value
                mise = _mise(est, kind.curve, grid, exact_curves[kind.curve])
                results[(kind, scheme)] = (value, mise)
        except Exception as exc:
            raise ReplicateError(sample_size, replicate, scheme.value, exc) from exc
    return results


def _run_replicates(work, replications, workers):
    if workers <= 1:
        return [work(i) for i in range(replications)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, range(replications)))


def run_experiment(config, workers=1):
    """Run every (sample size, replicate, scheme) cell of ``config``."""
    if int(workers) != workers or workers < 1:
        raise InvalidParameterError(f"workers must be a positive integer, got {workers}")
    started = time.monotonic()
    dist = config.dist
    logger.info(
        "Starting experiment %s: %s, n=%s, %d replications, %d worker(s)",
        config.name, dist, list(config.sample_sizes), config.replications, workers,
    )

    grid = uniform_grid(config.mise_grid)
    exact_index = {kind: index_exact(dist, kind).value for kind in config.kinds}
    exact_curves = {kind.curve: curve_values(dist, kind.curve, grid) for kind in config.kinds}

    cells = []
    raw = []
    for sample_size in config.sample_sizes:
        work = partial(_replicate, config, grid, exact_curves, sample_size)
        results = _run_replicates(work, config.replications, int(workers))
        logger.debug("Experiment %s: n=%d finished", config.name, sample_size)

        for scheme in config.schemes:
            for kind in config.kinds:
                pairs = np.array([result[(kind, scheme)] for result in results])
                estimates, mises = pairs[:, 0], pairs[:, 1]
                q1, median, q3 = np.percentile(estimates, [25, 50, 75])
                error = estimates - exact_index[kind]
                cells.append(CellSummary(
                    kind=kind,
                    scheme=scheme,
                    sample_size=sample_size,
                    exact_index=exact_index[kind],
                    index_median=float(median),
                    index_q1=float(q1),
                    index_q3=float(q3),
                    index_mse=float(np.mean(error * error)),
                    curve_mise=float(np.mean(mises)),
                    replications=config.replications,
                ))
                if config.keep_raw:
                    raw.extend(
                        {
                            'sample_size': sample_size,
                            'replicate': i,
                            'scheme': scheme.value,
                            'kind': kind.value,
                            'estimate': float(estimates[i]),
                            'mise': float(mises[i]),
                        }
                        for i in range(config.replications)
                    )

    elapsed = time.monotonic() - started
    logger.info("Finished experiment %s in %.1fs", config.name, elapsed)
    return SimulationReport(
        config=config, exact_index=exact_index, cells=cells, raw=raw, elapsed_seconds=elapsed,
    )
