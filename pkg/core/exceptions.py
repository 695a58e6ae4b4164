"""
Error hierarchy shared by the computation apps and the command-line surface.

Every error carries the exit code a management command reports when the
error escapes it: 2 for bad input or parameters, 3 for numerical failure.
"""

INPUT_ERROR_EXIT_CODE = 2
NUMERICAL_ERROR_EXIT_CODE = 3


class InequalityError(Exception):
    """
    Base class for errors raised by the inequality toolkit
    """
    exit_code = INPUT_ERROR_EXIT_CODE


class InvalidParameterError(InequalityError, ValueError):
    """
    A parameter or argument is outside its domain
    """


class InfiniteMeanError(InequalityError):
    """
    A mean-based quantity was requested for parameters with infinite mean
    """

    def __init__(self, distribution):
        super().__init__(f"{distribution} has an infinite mean")
        self.distribution = distribution


class DegenerateSampleError(InequalityError):
    """
    A denominator quantile is zero, so the ratio curve is undefined
    """


class DataInputError(InequalityError):
    """
    Input data could not be parsed or violates the sample invariants.

    ``rows`` holds the 1-based file line numbers of the offending rows.
    """

    def __init__(self, message, rows=None):
        self.rows = list(rows or [])
        if self.rows:
            shown = ', '.join(str(row) for row in self.rows[:20])
            if len(self.rows) > 20:
                shown += f', ... ({len(self.rows)} rows)'
            message = f"{message} (rows: {shown})"
        super().__init__(message)


class NumericalError(InequalityError):
    """
    A numerical routine failed to produce a trustworthy value
    """
    exit_code = NUMERICAL_ERROR_EXIT_CODE


class QuadratureError(NumericalError):
    """
    Quadrature did not reach the requested tolerance
    """


class ReplicateError(NumericalError):
    """
    A simulation replicate failed; identifies the failing cell
    """

    def __init__(self, sample_size, replicate, scheme, cause):
        super().__init__(
            f"replicate {replicate} at n={sample_size}, scheme {scheme} failed: {cause}"
        )
        self.sample_size = sample_size
        self.replicate = replicate
        self.scheme = scheme
        self.cause = cause
