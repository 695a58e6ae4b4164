"""
Plug-in index estimates by adaptive quadrature of the estimated curve.
"""

import numpy as np

from core.exceptions import InvalidParameterError
from core.quadrature import DEFAULT_QUADRATURE, integrate_function
from curves.quantile_curves import curve_breakpoints, curve_values
from estimators.quantiles import QuantileEstimate
from estimators.samples import Sample

from .estimates import IndexEstimate, IndexMethod, clamp_unit
from .kinds import IndexKind, SAMPLE_KINDS


def curve_integrand(src, kind):
    """
    Scalar integrand for ``kind``: the curve itself, or 2(p - C(p)) for the
    Gini-type indices.
    """
    curve = kind.curve

    if kind.gini_type:
        def integrand(p):
            return 2.0 * (p - float(curve_values(src, curve, np.array([p]))[0]))
    else:
        def integrand(p):
            return float(curve_values(src, curve, np.array([p]))[0])
    return integrand


def index_estimate_quadrature(sample, scheme, kind, quad=DEFAULT_QUADRATURE):
    """Plug-in estimate of ``kind`` by adaptive quadrature over (0, 1)."""
    kind = IndexKind.parse(kind)
    if kind not in SAMPLE_KINDS:
        raise InvalidParameterError(f"{kind} cannot be estimated from a sample")
    sample = Sample.from_values(sample)
    sample.require_positive()
    est = QuantileEstimate(sample, scheme)
    points = curve_breakpoints(est, kind.curve)
    value = integrate_function(curve_integrand(est, kind), 0.0, 1.0, quad, points=points)
    return IndexEstimate(
        kind=kind,
        value=clamp_unit(value, slack=10 * quad.abs_tol),
        scheme=est.scheme.value,
        method=IndexMethod.QUADRATURE,
        n=sample.n,
    )
