"""
Mean-based inequality curves of a parametric distribution.

    L(p) = (1/mu) int_0^p Q
    B(p) = L(p) / p
    M(p) = 1 - L(1 - p) = (1/mu) int_{1-p}^1 Q
    Z(p) = 1 - (L(p)/p) * ((1 - p) / (1 - L(p)))
    D(p) = 1 - L(p) / M(p)

Complements 1 - L are integrated directly over the upper tail rather than
formed by subtraction.
"""

import numpy as np

from core.exceptions import InfiniteMeanError, InvalidParameterError
from core.quadrature import DEFAULT_QUADRATURE
from distributions.families import ParametricDistribution

from .kinds import CLASSICAL_KINDS, CurveKind

# inner share integrals run this much tighter than the caller's spec
INNER_TIGHTENING = 1e3
INNER_REL_TOL = 1e-11


def inner_spec(quad):
    tightened = quad.tightened(INNER_TIGHTENING)
    return type(quad)(
        abs_tol=tightened.abs_tol,
        rel_tol=max(tightened.rel_tol, INNER_REL_TOL),
        max_subdivisions=quad.max_subdivisions,
    )


def _classical_value(dist, kind, p, inner):
    if kind is CurveKind.L:
        return dist.lower_share(p, inner)
    if kind is CurveKind.M:
        return dist.upper_share(1.0 - p, inner)
    lower = dist.lower_share(p, inner)
    if kind is CurveKind.B:
        return lower / p
    if kind is CurveKind.Z:
        return 1.0 - (lower / p) * ((1.0 - p) / dist.upper_share(p, inner))
    if kind is CurveKind.D:
        return 1.0 - lower / dist.upper_share(1.0 - p, inner)
    raise InvalidParameterError(f"{kind} is not a classical curve")


def classical_curve(dist, kind, p, quad=DEFAULT_QUADRATURE):
    """Evaluate classical curve ``kind`` of ``dist`` at ``p`` in (0, 1)."""
    kind = CurveKind.parse(kind)
    if kind not in CLASSICAL_KINDS:
        raise InvalidParameterError(f"{kind} is a quantile curve; use q_curve")
    if not isinstance(dist, ParametricDistribution):
        raise InvalidParameterError("classical curves need a parametric distribution")
    if not dist.has_finite_mean:
        raise InfiniteMeanError(str(dist))
    inner = inner_spec(quad)
    p_array = np.asarray(p, dtype=float)
    if not np.all((p_array > 0) & (p_array < 1)):
        raise InvalidParameterError("curve arguments must lie in (0, 1)")
    if p_array.ndim == 0:
        return float(_classical_value(dist, kind, float(p_array), inner))
    return np.array([_classical_value(dist, kind, float(x), inner) for x in p_array])
