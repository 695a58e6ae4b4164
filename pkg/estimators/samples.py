"""
Validated, sorted observation vectors.
"""

import numpy as np

from core.exceptions import DegenerateSampleError, InvalidParameterError


class Sample:
    """
    Sorted vector of finite non-negative observations, length n >= 1.

    The values array is read-only; derived samples are new instances.
    """

    __slots__ = ('_values',)

    def __init__(self, values):
        array = np.array(values, dtype=float).ravel()
        if array.size == 0:
            raise InvalidParameterError("a sample needs at least one observation")
        if not np.all(np.isfinite(array)):
            raise InvalidParameterError("sample contains NaN or infinite values")
        if np.any(array < 0):
            raise InvalidParameterError("sample contains negative values")
        array.sort(kind='stable')
        array.setflags(write=False)
        self._values = array

    @classmethod
    def from_values(cls, values):
        """Sample from any iterable of numbers; a Sample is returned as is."""
        if isinstance(values, Sample):
            return values
        if not isinstance(values, (np.ndarray, list, tuple)):
            values = np.fromiter(values, dtype=float)
        return cls(values)

    @classmethod
    def _from_sorted(cls, array):
        # trusted path for already validated and sorted arrays
        sample = cls.__new__(cls)
        array = np.asarray(array, dtype=float)
        array.setflags(write=False)
        sample._values = array
        return sample

    @property
    def values(self):
        return self._values

    @property
    def n(self):
        return int(self._values.size)

    @property
    def zero_count(self):
        return int(np.count_nonzero(self._values == 0.0))

    @property
    def positive_count(self):
        return self.n - self.zero_count

    def scaled(self, factor):
        """Sample multiplied by a positive constant."""
        if not (np.isfinite(factor) and factor > 0):
            raise InvalidParameterError(f"scale factor must be positive, got {factor}")
        return Sample._from_sorted(self._values * float(factor))

    def require_positive(self):
        if self._values[-1] <= 0.0:
            raise DegenerateSampleError("sample has no strictly positive observation")
        return self

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Sample):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self):
        return f"Sample(n={self.n}, zeros={self.zero_count})"
