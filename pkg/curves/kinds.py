import enum

from core.exceptions import InvalidParameterError


class CurveKind(enum.Enum):
    """
    Inequality curves.

    Quantile kinds are built from ratios of quantiles and work for any
    quantile source; classical kinds are mean-based and need a parametric
    distribution with finite mean.
    """
    QZ = 'qZ'
    QD = 'qD'
    QB = 'qB'
    L1 = 'L1'
    L2 = 'L2'
    L3 = 'L3'
    R = 'R'
    L = 'L'
    B = 'B'
    Z = 'Z'
    D = 'D'
    M = 'M'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for kind in cls:
            if kind.value == text:
                return kind
        # tolerate case differences when unambiguous
        folded = [kind for kind in cls if kind.value.lower() == text.lower()]
        if len(folded) == 1:
            return folded[0]
        raise InvalidParameterError(
            f"unknown curve kind {value!r}; choose from {', '.join(kind.value for kind in cls)}"
        )

    @property
    def is_classical(self):
        return self in CLASSICAL_KINDS

    @property
    def bounded(self):
        """Whether values lie in [0, 1]."""
        return self not in (CurveKind.QB, CurveKind.B)

    def __str__(self):
        return self.value


QUANTILE_KINDS = (
    CurveKind.QZ, CurveKind.QD, CurveKind.QB,
    CurveKind.L1, CurveKind.L2, CurveKind.L3, CurveKind.R,
)
CLASSICAL_KINDS = (CurveKind.L, CurveKind.B, CurveKind.Z, CurveKind.D, CurveKind.M)
