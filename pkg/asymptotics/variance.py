"""
Asymptotic variances of the empirical qZI and qDI estimators.

For a distribution with quantile function Q and Q' = 1/f(Q):

    a(p) = Q'(p/2) / Q((1+p)/2)
    b(p) = [Q(p/2) / Q((1+p)/2)] * Q'((1+p)/2) / Q((1+p)/2)
    c(p) = Q'(p/2) / Q(1-p/2)
    d(p) = [Q(p/2) / Q(1-p/2)] * Q'(1-p/2) / Q(1-p/2)

and sigma^2 is the double integral over (0, 1)^2 of a covariance kernel
built from these weights and Brownian-bridge covariances. The square is
truncated to [eps, 1-eps]^2 and covered by a mesh graded geometrically
towards both edges. Off-diagonal cells use tensor Gauss-Legendre rules;
diagonal cells are split into the triangles {q <= p} and {q >= p}, each
mapped to the unit square by a collapsed (Duffy) coordinate change, so the
min/max kink of the kernel never lies inside a rule.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from core.exceptions import InvalidParameterError, NumericalError, QuadratureError
from core.quadrature import DEFAULT_QUADRATURE
from distributions.families import Dagum, ParametricDistribution
from indices.exact import index_exact
from indices.kinds import IndexKind

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 1e-6
NODE_SCHEDULE = (8, 16, 32, 64, 128)
KINDS = ('Z', 'D')


@dataclass(frozen=True)
class VarianceResult:
    kind: str
    value: float
    dist: ParametricDistribution
    quad: object
    epsilon: float = DEFAULT_EPSILON
    nodes: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value >= 0):
            raise NumericalError(f"variance must be finite and non-negative, got {self.value}")


def _check_kind(kind):
    kind = str(kind).strip().upper()
    if kind not in KINDS:
        raise InvalidParameterError(f"variance kind must be Z or D, got {kind!r}")
    return kind


def _weights(dist, p):
    half = p / 2
    upper_z = (1 + p) / 2
    upper_d = 1 - p / 2
    q_half = dist.ppf(half)
    q_z = dist.ppf(upper_z)
    q_d = dist.ppf(upper_d)
    dq_half = dist.quantile_derivative(half)
    a = dq_half / q_z
    b = (q_half / q_z) * dist.quantile_derivative(upper_z) / q_z
    c = dq_half / q_d
    d = (q_half / q_d) * dist.quantile_derivative(upper_d) / q_d
    for name, values in zip('abcd', (a, b, c, d)):
        if not np.all(np.isfinite(values)):
            raise NumericalError(f"weight {name}(p) is not finite for {dist}")
    return a, b, c, d


def weight_functions(dist, p):
    """Weights (a, b, c, d) at ``p`` in (0, 1)."""
    p_array = np.asarray(p, dtype=float)
    if not np.all((p_array > 0) & (p_array < 1)):
        raise InvalidParameterError("weight functions need p in (0, 1)")
    values = _weights(dist, np.atleast_1d(p_array))
    if p_array.ndim == 0:
        return tuple(float(v[0]) for v in values)
    return values


def _kernel(kind, p, q, first_p, second_p, first_q, second_q):
    """Integrand at (p, q); ``first``/``second`` are (a, b) for Z and (c, d) for D."""
    if kind == 'Z':
        low = np.minimum(p, q)
        return (
            first_p * first_q * (low / 2 - p * q / 4)
            + second_p * second_q * (0.5 + low / 2 - (1 + p) * (1 + q) / 4)
            + second_p * first_q * (q / 2) * ((p - 1) / 2)
            + first_p * second_q * (p / 2) * ((q - 1) / 2)
        )
    high = np.maximum(p, q)
    return (
        first_p * first_q * (np.minimum(p, q) / 2 - p * q / 4)
        + second_p * second_q * (1 - high / 2 - (1 - p / 2) * (1 - q / 2))
        - (p * q / 4) * (second_p * first_q + first_p * second_q)
    )


def graded_mesh(epsilon):
    """
    Cell edges on [eps, 1 - eps]: eps, then 0.5 * 2^-k for decreasing k up
    to 0.5, mirrored about 0.5.
    """
    if not (0 < epsilon < 0.25):
        raise InvalidParameterError(f"epsilon must lie in (0, 0.25), got {epsilon}")
    k = 1
    while 0.5 * 2.0 ** -(k + 1) > epsilon:
        k += 1
    left = [epsilon] + [0.5 * 2.0 ** -j for j in range(k, 0, -1)] + [0.5]
    right = [1 - x for x in reversed(left[:-1])]
    return np.array(left + right)


def _unit_rule(nodes):
    x, w = special.roots_legendre(nodes)
    return (x + 1) / 2, w / 2


def _select(kind, weights):
    a, b, c, d = weights
    return (a, b) if kind == 'Z' else (c, d)


def _halves(dist, kind, epsilon, nodes):
    """Integrals over {q <= p} and {q >= p} with ``nodes`` points per direction."""
    mesh = graded_mesh(epsilon)
    left, right = mesh[:-1], mesh[1:]
    width = right - left
    s, ws = _unit_rule(nodes)

    points = left[:, None] + width[:, None] * s[None, :]
    point_weights = width[:, None] * ws[None, :]
    first, second = _select(kind, _weights(dist, points.ravel()))
    first = first.reshape(points.shape)
    second = second.reshape(points.shape)

    lower_parts = []
    upper_parts = []
    for i in range(len(left)):
        if i > 0:
            p_i = points[i][:, None]
            q_rest = points[:i].ravel()[None, :]
            weight_rest = point_weights[:i].ravel()
            f_i, s_i = first[i][:, None], second[i][:, None]
            f_rest, s_rest = first[:i].ravel()[None, :], second[:i].ravel()[None, :]
            # p in cell i, q below it
            block = _kernel(kind, p_i, q_rest, f_i, s_i, f_rest, s_rest)
            lower_parts.append(point_weights[i] @ block @ weight_rest)
            # q in cell i, p below it
            block = _kernel(kind, q_rest.T, p_i.T, f_rest.T, s_rest.T, f_i.T, s_i.T)
            upper_parts.append(weight_rest @ block @ point_weights[i])

        # diagonal cell: collapsed coordinates on each triangle
        h = width[i]
        outer = left[i] + h * s                          # the larger coordinate
        inner = left[i] + h * s[:, None] * s[None, :]    # the smaller one, per (s, t)
        tri_weights = (h * h) * (s * ws)[:, None] * ws[None, :]
        f_inner, s_inner = _select(kind, _weights(dist, inner.ravel()))
        f_inner = f_inner.reshape(inner.shape)
        s_inner = s_inner.reshape(inner.shape)
        f_outer, s_outer = _select(kind, _weights(dist, outer))
        big = outer[:, None]
        lower_parts.append(np.sum(tri_weights * _kernel(
            kind, big, inner, f_outer[:, None], s_outer[:, None], f_inner, s_inner,
        )))
        upper_parts.append(np.sum(tri_weights * _kernel(
            kind, inner, big, f_inner, s_inner, f_outer[:, None], s_outer[:, None],
        )))

    return math.fsum(lower_parts), math.fsum(upper_parts)


def triangle_integrals(dist, kind, quad=DEFAULT_QUADRATURE, epsilon=DEFAULT_EPSILON):
    """
    Converged integrals of the variance kernel over {q <= p} and {q >= p}.

    Returns (lower, upper, nodes). The node count doubles until two
    successive totals agree within the quadrature tolerance.
    """
    kind = _check_kind(kind)
    previous = None
    for nodes in NODE_SCHEDULE:
        lower, upper = _halves(dist, kind, epsilon, nodes)
        total = lower + upper
        logger.debug("sigma2_%s of %s with %d nodes: %.15g", kind, dist, nodes, total)
        if previous is not None and abs(total - previous) <= quad.tolerance_for(total):
            return lower, upper, nodes
        previous = total
    raise QuadratureError(
        f"sigma2_{kind} of {dist} did not converge with {NODE_SCHEDULE[-1]} nodes per cell"
    )


def _sigma2(dist, kind, quad, epsilon):
    if not isinstance(dist, ParametricDistribution):
        raise InvalidParameterError(f"{dist!r} is not a parametric distribution")
    lower, upper, nodes = triangle_integrals(dist, kind, quad, epsilon)
    value = lower + upper
    if value < 0:
        if value < -quad.tolerance_for(value):
            raise NumericalError(f"sigma2_{kind} of {dist} is negative: {value:.6g}")
        value = 0.0
    return VarianceResult(kind=kind, value=value, dist=dist, quad=quad, epsilon=epsilon, nodes=nodes)


def sigma2_Z(dist, quad=DEFAULT_QUADRATURE, epsilon=DEFAULT_EPSILON):
    """Asymptotic variance of sqrt(n) * (estimated qZI - qZI)."""
    return _sigma2(dist, 'Z', quad, epsilon)


def sigma2_D(dist, quad=DEFAULT_QUADRATURE, epsilon=DEFAULT_EPSILON):
    """Asymptotic variance of sqrt(n) * (estimated qDI - qDI)."""
    return _sigma2(dist, 'D', quad, epsilon)


def variance_sweep(a_values, sigma=1.0, b=1.0, quad=DEFAULT_QUADRATURE, epsilon=DEFAULT_EPSILON):
    """
    Rows (a, qZI, sigma2_Z, qDI, sigma2_D) for Dagum(sigma, a, b) over ``a_values``.
    """
    rows = []
    for a in a_values:
        dist = Dagum(sigma, a, b)
        rows.append({
            'a': float(a),
            'qZI': index_exact(dist, IndexKind.QZI, quad).value,
            'sigma2_Z': sigma2_Z(dist, quad, epsilon).value,
            'qDI': index_exact(dist, IndexKind.QDI, quad).value,
            'sigma2_D': sigma2_D(dist, quad, epsilon).value,
        })
        logger.info("Variance sweep a=%g done", a)
    return rows
