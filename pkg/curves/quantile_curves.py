"""
Quantile-ratio inequality curves.

Every curve here is a ratio of two quantile evaluations, so it only needs a
quantile source: a QuantileEstimate (sample plus scheme) or a parametric
distribution. Both expose ``ppf``.
"""

import numpy as np

from core.exceptions import DegenerateSampleError, InvalidParameterError

from .kinds import CurveKind, QUANTILE_KINDS


def quantile_function(src):
    try:
        return src.ppf
    except AttributeError:
        raise InvalidParameterError(f"{src!r} is not a quantile source")


def ratio_terms(ppf, kind, p):
    """
    Numerator and denominator quantiles of ``kind`` at ``p``.

    qZ  Q(p/2) / Q((1+p)/2)
    qD, L2, R  Q(p/2) / Q(1 - p/2)
    qB, L1  Q(p/2) / Q(1/2)
    L3  Q(p/2) / (Q(p/2) + Q(1 - p/2))
    """
    low = ppf(p / 2)
    if kind is CurveKind.QZ:
        return low, ppf((1 + p) / 2)
    if kind in (CurveKind.QD, CurveKind.L2, CurveKind.R):
        return low, ppf(1 - p / 2)
    if kind in (CurveKind.QB, CurveKind.L1):
        return low, np.full_like(low, ppf(0.5))
    if kind is CurveKind.L3:
        return low, low + ppf(1 - p / 2)
    raise InvalidParameterError(f"{kind} is not a quantile curve")


def curve_breakpoints(est, kind):
    """
    Curve arguments in (0, 1) where either quantile of ``kind`` crosses a
    knot of the estimate ``est``: numerator knots at 2*b, denominator knots
    at 2*b - 1 for qZ and at 2*(1 - b) for the Q(1 - p/2) curves.
    """
    kind = CurveKind.parse(kind)
    knots = est.breakpoints()
    candidates = [2 * knots]
    if kind is CurveKind.QZ:
        candidates.append(2 * knots - 1)
    elif kind in (CurveKind.QD, CurveKind.L2, CurveKind.L3, CurveKind.R):
        candidates.append(2 * (1 - knots))
    points = np.unique(np.concatenate(candidates))
    return points[(points > 0) & (points < 1)]


def curve_values(src, kind, p):
    """Vectorised curve evaluation; ``p`` is assumed to lie in (0, 1)."""
    kind = CurveKind.parse(kind)
    p = np.asarray(p, dtype=float)
    numerator, denominator = ratio_terms(quantile_function(src), kind, p)
    if np.any(denominator == 0):
        raise DegenerateSampleError(
            f"{kind} is undefined: a denominator quantile is zero"
        )
    ratio = numerator / denominator
    if kind in (CurveKind.QZ, CurveKind.QD):
        return 1.0 - ratio
    if kind in (CurveKind.L1, CurveKind.L2):
        return p * ratio
    if kind is CurveKind.L3:
        return 2 * p * ratio
    return ratio


def q_curve(src, kind, p):
    """
    Evaluate quantile curve ``kind`` of ``src`` at ``p`` in (0, 1).

    A zero numerator quantile over a positive denominator gives the
    perfect-inequality value; a zero denominator raises
    DegenerateSampleError.
    """
    kind = CurveKind.parse(kind)
    if kind not in QUANTILE_KINDS:
        raise InvalidParameterError(f"{kind} is a classical curve; use classical_curve")
    p_array = np.asarray(p, dtype=float)
    if not np.all((p_array > 0) & (p_array < 1)):
        raise InvalidParameterError("curve arguments must lie in (0, 1)")
    values = curve_values(src, kind, np.atleast_1d(p_array))
    return float(values[0]) if p_array.ndim == 0 else values
