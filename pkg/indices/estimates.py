import enum
import math
from dataclasses import dataclass
from typing import Optional

from core.exceptions import InvalidParameterError

from .kinds import IndexKind

EXACT = 'exact'


class IndexMethod(enum.Enum):
    CLOSED_FORM = 'closed_form'
    QUADRATURE = 'quadrature'
    MONTE_CARLO = 'monte_carlo'

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class IndexEstimate:
    """
    An index value with its provenance.

    ``scheme`` is a quantile scheme tag for sample estimates and 'exact' for
    values computed from a distribution; ``n`` is the sample size, 0 for
    exact values and the number of draws for Monte Carlo oracles.
    """
    kind: IndexKind
    value: float
    scheme: str
    method: IndexMethod
    n: int = 0
    std_error: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.value) and 0.0 <= self.value <= 1.0):
            raise InvalidParameterError(f"{self.kind} value {self.value} is outside [0, 1]")
        if self.method is IndexMethod.CLOSED_FORM and (
            self.scheme == EXACT or self.kind not in (IndexKind.QZI, IndexKind.QDI)
        ):
            raise InvalidParameterError("closed-form estimates exist only for qZI/qDI on samples")


def clamp_unit(value, slack=1e-12):
    """
    Clamp roundoff excursions just outside [0, 1]; anything further out is
    left alone so IndexEstimate rejects it.
    """
    if -slack <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + slack:
        return 1.0
    return value
