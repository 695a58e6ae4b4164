"""
Adaptive one-dimensional quadrature shared by the curve, index and
distribution code.

Wraps scipy's QUADPACK driver (Gauss-Kronrod 21-point pairs with adaptive
bisection) and turns its diagnostics into log records or QuadratureError.
"""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate

from .exceptions import InvalidParameterError, QuadratureError

logger = logging.getLogger(__name__)

# QUADPACK accepts at most this many user break points per call
MAX_POINTS_PER_CALL = 100

# error estimates up to this multiple of the tolerance are accepted with a warning
TOLERATED_ERROR_FACTOR = 10.0


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Tolerances for adaptive quadrature
    """
    abs_tol: float = 1e-9
    rel_tol: float = 0.0
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (math.isfinite(self.abs_tol) and self.abs_tol > 0):
            raise InvalidParameterError(f"abs_tol must be positive, got {self.abs_tol}")
        if not (math.isfinite(self.rel_tol) and self.rel_tol >= 0):
            raise InvalidParameterError(f"rel_tol must be non-negative, got {self.rel_tol}")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise InvalidParameterError(
                f"max_subdivisions must be a positive integer, got {self.max_subdivisions}"
            )

    @classmethod
    def from_settings(cls):
        from django.conf import settings

        return cls(
            abs_tol=settings.QUADRATURE_ABS_TOL,
            rel_tol=settings.QUADRATURE_REL_TOL,
            max_subdivisions=settings.QUADRATURE_MAX_SUBDIVISIONS,
        )

    def tightened(self, factor):
        """Copy with both tolerances scaled down by ``factor``."""
        return replace(self, abs_tol=self.abs_tol / factor, rel_tol=self.rel_tol / factor)

    def tolerance_for(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_QUADRATURE = QuadratureSpec()


def _quad_piece(func, lo, hi, spec, points):
    result = integrate.quad(
        func,
        lo,
        hi,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        points=points or None,
        full_output=1,
    )
    value, abserr = result[0], result[1]
    if not math.isfinite(value):
        raise QuadratureError(f"non-finite integral on [{lo}, {hi}]")
    if len(result) > 3:
        message = result[3]
        allowed = TOLERATED_ERROR_FACTOR * spec.tolerance_for(value)
        if abserr <= allowed:
            logger.warning(
                "Quadrature on [%g, %g] reported %r; error estimate %.3g accepted",
                lo, hi, message.strip(), abserr,
            )
        else:
            raise QuadratureError(
                f"quadrature on [{lo}, {hi}] did not converge "
                f"(error estimate {abserr:.3g}): {message.strip()}"
            )
    return value, abserr


def integrate_function(func, lo, hi, spec=DEFAULT_QUADRATURE, points=None):
    """
    Integrate ``func`` over [lo, hi] and return the value.

    ``points`` are interior locations where the integrand has kinks or
    jumps. More than QUADPACK's per-call limit are handled by splitting the
    interval into consecutive chunks. The integrand is only evaluated at
    interior nodes, so open-interval integrands are fine.
    """
    if not (lo < hi):
        raise InvalidParameterError(f"empty integration interval [{lo}, {hi}]")
    interior = []
    if points is not None:
        pts = np.unique(np.asarray(points, dtype=float))
        interior = pts[(pts > lo) & (pts < hi)].tolist()

    if len(interior) <= MAX_POINTS_PER_CALL:
        value, _ = _quad_piece(func, lo, hi, spec, interior)
        return value

    edges = [lo] + interior[MAX_POINTS_PER_CALL::MAX_POINTS_PER_CALL + 1] + [hi]
    edge_set = set(edges)
    logger.debug("Splitting [%g, %g] into %d quadrature chunks", lo, hi, len(edges) - 1)
    # each chunk gets an equal share of the tolerance
    share = replace(spec, abs_tol=spec.abs_tol / (len(edges) - 1))
    pieces = []
    for left, right in zip(edges[:-1], edges[1:]):
        inner = [p for p in interior if left < p < right and p not in edge_set]
        value, _ = _quad_piece(func, left, right, share, inner)
        pieces.append(value)
    return math.fsum(pieces)
