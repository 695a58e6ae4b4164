"""
Sample quantile estimators.

Four schemes are supported:

    E   empirical quantile, inf{t : EDF(t) >= p}          (reference type 1)
    H   linear interpolation, p_k = (k - 1/2) / n         (reference type 5)
    HF  linear interpolation, p_k = (k - 1/3) / (n + 1/3) (reference type 8)
    WG  linear interpolation, p_k = k / (n + 1)           (reference type 6)

Evaluation reproduces the arithmetic of R's ``quantile(x, p, type=...)``
step by step (fuzzed floor, padded order statistics, the h == 1 and
zero-width bracket special cases) so results agree to the last bit.
Outside [p_1, p_n] the interpolated schemes clamp to the extreme order
statistics.
"""

import enum

import numpy as np

from core.exceptions import InvalidParameterError

from .samples import Sample

FUZZ = 4 * np.finfo(float).eps


class QuantileScheme(enum.Enum):
    E = 'E'
    H = 'H'
    HF = 'HF'
    WG = 'WG'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper()
        try:
            return cls[key]
        except KeyError:
            raise InvalidParameterError(
                f"unknown quantile scheme {value!r}; choose from E, H, HF, WG"
            )

    @property
    def reference_type(self):
        return _REFERENCE_TYPES[self]

    @property
    def offset(self):
        """Plotting-position offset m in p_k = (k - m) / (n + 1 - 2m)."""
        if self is QuantileScheme.E:
            raise InvalidParameterError("scheme E has no plotting positions")
        return _OFFSETS[self]

    @property
    def interpolated(self):
        return self is not QuantileScheme.E

    def __str__(self):
        return self.value


_REFERENCE_TYPES = {
    QuantileScheme.E: 1,
    QuantileScheme.H: 5,
    QuantileScheme.HF: 8,
    QuantileScheme.WG: 6,
}

_OFFSETS = {
    QuantileScheme.H: 0.5,
    QuantileScheme.HF: 1.0 / 3.0,
    QuantileScheme.WG: 0.0,
}


def plotting_positions(scheme, n):
    """p_k for k = 1..n; strictly increasing and inside (0, 1)."""
    scheme = QuantileScheme.parse(scheme)
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"n must be a positive integer, got {n}")
    m = scheme.offset
    k = np.arange(1, int(n) + 1, dtype=float)
    return (k - m) / (n + 1 - 2 * m)


def edf(sample, t):
    """Empirical distribution function (1/n) #{X_i <= t}."""
    t_array = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t_array)):
        raise InvalidParameterError("edf arguments must be finite")
    counts = np.searchsorted(sample.values, t_array, side='right')
    result = counts / sample.n
    return float(result) if t_array.ndim == 0 else result


class QuantileEstimate:
    """
    Quantile function estimated from a sample under one scheme.

    Immutable once built; ``ppf`` is the vectorised, unchecked evaluator on
    [0, 1] and ``quantile_at`` the checked one on (0, 1).
    """

    __slots__ = ('sample', 'scheme', '_padded')

    def __init__(self, sample, scheme):
        sample = Sample.from_values(sample)
        self.sample = sample
        self.scheme = QuantileScheme.parse(scheme)
        x = sample.values
        padded = np.concatenate(([x[0], x[0]], x, [x[-1], x[-1]]))
        padded.setflags(write=False)
        self._padded = padded

    @property
    def n(self):
        return self.sample.n

    @property
    def knots(self):
        """(p_k, X_{k:n}) pairs for interpolated schemes."""
        return plotting_positions(self.scheme, self.n), self.sample.values

    def breakpoints(self):
        """
        Interior probabilities where the estimate changes form: the jump
        locations k/n for E, the plotting positions otherwise.
        """
        n = self.n
        if self.scheme is QuantileScheme.E:
            return np.arange(1, n, dtype=float) / n
        return plotting_positions(self.scheme, n)

    def ppf(self, p):
        p = np.asarray(p, dtype=float)
        scalar = p.ndim == 0
        p = np.atleast_1d(p)
        n = self.n
        x = self._padded

        if self.scheme is QuantileScheme.E:
            nppm = n * p
            j = np.floor(nppm + FUZZ)
            h = (nppm > j).astype(float)
        else:
            m = self.scheme.offset
            nppm = m + p * (n + 1 - m - m)
            j = np.floor(nppm + FUZZ)
            h = nppm - j
            h[np.abs(h) < FUZZ] = 0.0

        j = j.astype(np.intp)
        lower = x[j + 1]
        upper = x[j + 2]
        result = lower.copy()
        top = h == 1
        result[top] = upper[top]
        inside = (h > 0) & (h < 1) & (lower != upper)
        result[inside] = ((1 - h) * lower + h * upper)[inside]
        return float(result[0]) if scalar else result

    def quantile_at(self, p):
        p_array = np.asarray(p, dtype=float)
        if not np.all((p_array > 0) & (p_array < 1)):
            raise InvalidParameterError("quantile probabilities must lie in (0, 1)")
        return self.ppf(p)

    def __repr__(self):
        return f"QuantileEstimate({self.sample!r}, scheme={self.scheme})"


def quantile_at(est, p):
    return est.quantile_at(p)
