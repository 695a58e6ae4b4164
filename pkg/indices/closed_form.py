"""
Exact integration of the plug-in qZ and qD curves of a sample.

Between consecutive breakpoints both quantile arguments stay inside one
knot interval, so the numerator and denominator quantiles are linear in p
(constant for scheme E). The curve is then (m0 + dm*s) / (d0 + dd*s) on
the unit piece s in [0, 1], with m = d - n, and each piece integrates to

    (w / d0) * [m0 * log1p(x)/x + dm * (x - log1p(x))/x^2],  x = dd/d0.

The index is the compensated sum of the piece integrals.
"""

import logging
import math

import numpy as np

from core.exceptions import DegenerateSampleError, InvalidParameterError
from curves.kinds import CurveKind
from curves.quantile_curves import curve_breakpoints
from estimators.quantiles import QuantileEstimate, QuantileScheme
from estimators.samples import Sample

from .estimates import IndexEstimate, IndexMethod, clamp_unit
from .kinds import CLOSED_FORM_KINDS, IndexKind

logger = logging.getLogger(__name__)

SERIES_THRESHOLD = 1e-3
SERIES_TERMS = 8


def _denominator_argument(curve, p):
    if curve is CurveKind.QZ:
        return (1 + p) / 2
    return 1 - p / 2


def _log_ratio_moments(x):
    """
    log1p(x)/x and (x - log1p(x))/x^2 for x > -1, x != 0, by series near 0.
    """
    first = np.empty_like(x)
    second = np.empty_like(x)
    small = np.abs(x) < SERIES_THRESHOLD

    xs = x[small]
    powers = np.ones_like(xs)
    acc_first = np.zeros_like(xs)
    acc_second = np.zeros_like(xs)
    for k in range(SERIES_TERMS):
        acc_first += powers / (k + 1)
        acc_second += powers / (k + 2)
        powers = powers * -xs
    first[small] = acc_first
    second[small] = acc_second

    xl = x[~small]
    log_term = np.log1p(xl)
    first[~small] = log_term / xl
    second[~small] = (xl - log_term) / (xl * xl)
    return first, second


def linear_ratio_integrals(width, m0, m1, d0, d1):
    """
    Integrals over pieces of width ``width`` of a ratio of two linear
    functions with end values (m0, m1) and (d0, d1), d >= 0.

    A zero denominator at one end shares its root with the numerator, so
    the ratio is constant on that piece. A denominator vanishing at both
    ends is a degenerate sample.
    """
    if np.any((d0 == 0) & (d1 == 0)):
        raise DegenerateSampleError(
            "denominator quantile is zero on a piece of positive length"
        )
    out = np.empty_like(width)
    start_root = d0 == 0
    end_root = (d1 == 0) & ~start_root
    out[start_root] = width[start_root] * m1[start_root] / d1[start_root]
    out[end_root] = width[end_root] * m0[end_root] / d0[end_root]

    regular = ~(start_root | end_root)
    dd = d1 - d0
    dm = m1 - m0

    flat = regular & (dd == 0)
    out[flat] = width[flat] * (m0[flat] + dm[flat] / 2) / d0[flat]

    moving = regular & (dd != 0)
    x = dd[moving] / d0[moving]
    first, second = _log_ratio_moments(x)
    out[moving] = width[moving] * (m0[moving] * first + dm[moving] * second) / d0[moving]
    return out


def _piece_integrals(est, curve):
    edges = np.unique(np.concatenate(([0.0, 1.0], curve_breakpoints(est, curve))))
    left, right = edges[:-1], edges[1:]
    width = right - left
    ppf = est.ppf

    if est.scheme is QuantileScheme.E:
        middle = (left + right) / 2
        numerator = ppf(middle / 2)
        denominator = ppf(_denominator_argument(curve, middle))
        if np.any(denominator == 0):
            raise DegenerateSampleError(
                "denominator quantile is zero on a piece of positive length"
            )
        return width * (denominator - numerator) / denominator

    n0, n1 = ppf(left / 2), ppf(right / 2)
    d0 = ppf(_denominator_argument(curve, left))
    d1 = ppf(_denominator_argument(curve, right))
    return linear_ratio_integrals(width, d0 - n0, d1 - n1, d0, d1)


def index_estimate_closed_form(sample, scheme, kind):
    """
    Plug-in qZI or qDI of ``sample`` under ``scheme``, integrated exactly.
    """
    kind = IndexKind.parse(kind)
    if kind not in CLOSED_FORM_KINDS:
        raise InvalidParameterError(f"no closed form for {kind}; use index_estimate_quadrature")
    sample = Sample.from_values(sample)
    sample.require_positive()
    est = QuantileEstimate(sample, scheme)

    pieces = _piece_integrals(est, kind.curve)
    value = clamp_unit(math.fsum(pieces.tolist()))
    logger.debug("%s closed form over %d pieces: %.17g", kind, pieces.size, value)
    return IndexEstimate(
        kind=kind,
        value=value,
        scheme=est.scheme.value,
        method=IndexMethod.CLOSED_FORM,
        n=sample.n,
    )
