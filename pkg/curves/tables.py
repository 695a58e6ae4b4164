"""
Curve tables: a curve evaluated on a grid of probabilities.
"""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from core.exceptions import InvalidParameterError, NumericalError
from core.quadrature import DEFAULT_QUADRATURE

from .classical import classical_curve
from .kinds import CurveKind
from .quantile_curves import q_curve

logger = logging.getLogger(__name__)

# rounding overshoot of [0, 1] tolerated for sample curves
RANGE_SLACK = 1e-12


def uniform_grid(size):
    """Midpoints (j - 1/2)/size for j = 1..size; a single point sits at 0.5."""
    if int(size) != size or size < 1:
        raise InvalidParameterError(f"grid size must be a positive integer, got {size}")
    size = int(size)
    return (np.arange(1, size + 1, dtype=float) - 0.5) / size


@dataclass(frozen=True, eq=False)
class CurveTable:
    kind: CurveKind
    grid: np.ndarray
    values: np.ndarray
    source: str = ''
    scheme: str = 'exact'

    def as_pairs(self):
        return [[float(p), float(v)] for p, v in zip(self.grid, self.values)]

    def to_frame(self):
        return pd.DataFrame({'p': self.grid, 'value': self.values})

    def __len__(self):
        return len(self.grid)


def _check_grid(grid):
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0:
        raise InvalidParameterError("grid is empty")
    if not np.all((grid > 0) & (grid < 1)):
        raise InvalidParameterError("grid points must lie in (0, 1)")
    if np.any(np.diff(grid) <= 0):
        raise InvalidParameterError("grid must be strictly increasing")
    return grid


def _unit_range(kind, values, slack):
    """Clip rounding overshoot of a bounded curve; anything larger is an error."""
    outside = (values < -slack) | (values > 1 + slack)
    if np.any(outside):
        worst = values[outside][0]
        raise NumericalError(f"{kind} value {worst!r} lies outside [0, 1]")
    return np.clip(values, 0.0, 1.0)


def tabulate(src, kind, grid, quad=DEFAULT_QUADRATURE):
    """Evaluate ``kind`` for ``src`` at every grid point."""
    kind = CurveKind.parse(kind)
    grid = _check_grid(grid)
    if kind.is_classical:
        values = classical_curve(src, kind, grid, quad)
    else:
        values = q_curve(src, kind, grid)
    scheme = getattr(getattr(src, 'scheme', None), 'value', 'exact')
    source = str(getattr(src, 'sample', src))
    logger.debug("Tabulated %s on %d points for %s", kind, grid.size, source)
    values = np.asarray(values, dtype=float)
    if kind.bounded:
        slack = 10 * quad.abs_tol if kind.is_classical else RANGE_SLACK
        values = _unit_range(kind, values, slack)
    values.setflags(write=False)
    grid.setflags(write=False)
    return CurveTable(kind=kind, grid=grid, values=values, source=source, scheme=scheme)
