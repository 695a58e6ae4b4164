"""
Dagum and Pareto income distributions.

Both families expose a checked scalar/array interface (``cdf``,
``quantile``, ``density``, ``mean``) and an unchecked vectorised quantile
``ppf`` used on hot paths where arguments are known to lie in (0, 1).
Scalar arguments give Python floats back, arrays give arrays.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from core.exceptions import InfiniteMeanError, InvalidParameterError, NumericalError
from core.quadrature import QuadratureSpec, integrate_function
from estimators.samples import Sample

from .random import open_uniforms

logger = logging.getLogger(__name__)

MEAN_QUADRATURE = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-9, max_subdivisions=2000)


def _check_parameter(name, value):
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise InvalidParameterError(f"{name} must be positive and finite, got {value}")
    return value


def _as_array(values):
    array = np.asarray(values, dtype=float)
    return array, array.ndim == 0


def _result(array, scalar):
    return float(array) if scalar else array


class ParametricDistribution(ABC):
    """
    A continuous income distribution on the positive half-line
    """

    family = None

    @abstractmethod
    def ppf(self, p):
        """Quantile function without argument checks."""

    @abstractmethod
    def _cdf(self, x):
        pass

    @abstractmethod
    def _density(self, x):
        pass

    @abstractmethod
    def _support_check(self, x):
        """Boolean mask of points where the density is defined."""

    @property
    @abstractmethod
    def has_finite_mean(self):
        pass

    @abstractmethod
    def _mean(self):
        pass

    @property
    @abstractmethod
    def parameters(self):
        """Ordered mapping of parameter names to values."""

    def cdf(self, x):
        x, scalar = _as_array(x)
        if not np.all(np.isfinite(x)) or np.any(x <= 0):
            raise InvalidParameterError("cdf arguments must be positive and finite")
        return _result(self._cdf(x), scalar)

    def quantile(self, p):
        p, scalar = _as_array(p)
        if not np.all((p > 0) & (p < 1)):
            raise InvalidParameterError("quantile probabilities must lie in (0, 1)")
        return _result(self.ppf(p), scalar)

    def density(self, x):
        x, scalar = _as_array(x)
        if not np.all(np.isfinite(x)) or not np.all(self._support_check(x)):
            raise InvalidParameterError(f"density arguments must lie in the support of {self}")
        return _result(self._density(x), scalar)

    def quantile_derivative(self, p):
        """Q'(p) = 1 / f(Q(p))."""
        p, scalar = _as_array(p)
        if not np.all((p > 0) & (p < 1)):
            raise InvalidParameterError("quantile probabilities must lie in (0, 1)")
        with np.errstate(divide='ignore', over='ignore'):
            values = 1.0 / self._density(self.ppf(p))
        if not np.all(np.isfinite(values)):
            raise NumericalError(f"density of {self} vanishes or overflows near p={p.min():g}..{p.max():g}")
        return _result(values, scalar)

    def mean(self):
        if not self.has_finite_mean:
            raise InfiniteMeanError(str(self))
        return self._mean()

    def lower_share(self, p, quad):
        """(1/mu) * integral of Q over (0, p)."""
        mu = self.mean()
        return integrate_function(self.ppf, 0.0, p, quad) / mu

    def upper_share(self, p, quad):
        """(1/mu) * integral of Q over (p, 1)."""
        mu = self.mean()
        return integrate_function(self.ppf, p, 1.0, quad) / mu

    def sample(self, n, seed):
        """
        ``n`` i.i.d. draws by inverse transform, returned as a sorted Sample.

        Identical (distribution, n, seed) triples give bit-identical output.
        """
        if int(n) != n or n < 1:
            raise InvalidParameterError(f"sample size must be a positive integer, got {n}")
        draws = self.ppf(open_uniforms(int(n), seed))
        return Sample.from_values(draws)

    def __str__(self):
        from .parsing import format_distribution

        return format_distribution(self)


@lru_cache(maxsize=256)
def _dagum_mean(sigma, a, b):
    dist = Dagum(sigma, a, b)
    value = integrate_function(dist.ppf, 0.0, 1.0, MEAN_QUADRATURE)
    logger.debug("Mean of %s by quadrature: %.17g", dist, value)
    return value


@dataclass(frozen=True)
class Dagum(ParametricDistribution):
    """
    Dagum(sigma, a, b) with F(x) = [1 + (x/sigma)^(-a)]^(-b)
    """
    sigma: float
    a: float
    b: float

    family = 'dagum'

    def __post_init__(self):
        for name in ('sigma', 'a', 'b'):
            object.__setattr__(self, name, _check_parameter(name, getattr(self, name)))

    @property
    def parameters(self):
        return {'sigma': self.sigma, 'a': self.a, 'b': self.b}

    @property
    def has_finite_mean(self):
        return self.a > 1

    def _log_u(self, x):
        with np.errstate(divide='ignore'):
            return -self.a * np.log(x / self.sigma)

    def _cdf(self, x):
        return np.exp(-self.b * np.logaddexp(0.0, self._log_u(x)))

    def ppf(self, p):
        p = np.asarray(p, dtype=float)
        return self.sigma * np.expm1(-np.log(p) / self.b) ** (-1.0 / self.a)

    def _density(self, x):
        log_u = self._log_u(x)
        with np.errstate(divide='ignore'):
            log_f = (
                math.log(self.a * self.b)
                + log_u
                - (self.b + 1.0) * np.logaddexp(0.0, log_u)
                - np.log(x)
            )
        return np.exp(log_f)

    def _support_check(self, x):
        return x > 0

    def _mean(self):
        return _dagum_mean(self.sigma, self.a, self.b)


@dataclass(frozen=True)
class Pareto(ParametricDistribution):
    """
    Pareto(xm, alpha) with F(x) = 1 - (xm/x)^alpha on x >= xm
    """
    xm: float
    alpha: float

    family = 'pareto'

    def __post_init__(self):
        for name in ('xm', 'alpha'):
            object.__setattr__(self, name, _check_parameter(name, getattr(self, name)))

    @property
    def parameters(self):
        return {'xm': self.xm, 'alpha': self.alpha}

    @property
    def has_finite_mean(self):
        return self.alpha > 1

    def _cdf(self, x):
        with np.errstate(divide='ignore'):
            tail = -np.expm1(self.alpha * np.log(self.xm / np.maximum(x, self.xm)))
        return np.where(x < self.xm, 0.0, tail)

    def ppf(self, p):
        p = np.asarray(p, dtype=float)
        return self.xm * np.power(1.0 - p, -1.0 / self.alpha)

    def _density(self, x):
        return self.alpha * self.xm ** self.alpha * np.power(x, -self.alpha - 1.0)

    def _support_check(self, x):
        return x >= self.xm

    def _mean(self):
        return self.alpha * self.xm / (self.alpha - 1.0)
