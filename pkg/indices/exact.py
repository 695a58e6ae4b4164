"""
Index values of parametric distributions.
"""

import logging

from core.exceptions import InfiniteMeanError, InvalidParameterError
from core.quadrature import DEFAULT_QUADRATURE, integrate_function
from curves.classical import classical_curve
from distributions.families import ParametricDistribution

from .estimates import EXACT, IndexEstimate, IndexMethod, clamp_unit
from .kinds import CLASSICAL_INDEX_KINDS, IndexKind
from .plug_in import curve_integrand

logger = logging.getLogger(__name__)


def _require_distribution(dist):
    if not isinstance(dist, ParametricDistribution):
        raise InvalidParameterError(f"{dist!r} is not a parametric distribution")


def _exact_estimate(kind, value, quad):
    return IndexEstimate(
        kind=kind,
        value=clamp_unit(value, slack=10 * quad.abs_tol),
        scheme=EXACT,
        method=IndexMethod.QUADRATURE,
        n=0,
    )


def classical_index(dist, kind, quad=DEFAULT_QUADRATURE):
    """
    GI = 2 int (p - L), BI = 1 - int B, ZI = int Z, DI = int D.
    """
    kind = IndexKind.parse(kind)
    if kind not in CLASSICAL_INDEX_KINDS:
        raise InvalidParameterError(f"{kind} is not a classical index")
    _require_distribution(dist)
    if not dist.has_finite_mean:
        raise InfiniteMeanError(str(dist))

    curve = kind.curve
    if kind is IndexKind.GI:
        def integrand(p):
            return 2.0 * (p - classical_curve(dist, curve, p, quad))
    elif kind is IndexKind.BI:
        def integrand(p):
            return 1.0 - classical_curve(dist, curve, p, quad)
    else:
        def integrand(p):
            return classical_curve(dist, curve, p, quad)

    value = integrate_function(integrand, 0.0, 1.0, quad)
    logger.debug("%s of %s: %.12g", kind, dist, value)
    return _exact_estimate(kind, value, quad)


def index_exact(dist, kind, quad=DEFAULT_QUADRATURE):
    """
    Exact index of a distribution by adaptive quadrature of its curve over
    (0, 1). Classical kinds delegate to ``classical_index``.
    """
    kind = IndexKind.parse(kind)
    _require_distribution(dist)
    if kind.is_classical:
        return classical_index(dist, kind, quad)
    value = integrate_function(curve_integrand(dist, kind), 0.0, 1.0, quad)
    logger.debug("%s of %s: %.12g", kind, dist, value)
    return _exact_estimate(kind, value, quad)

