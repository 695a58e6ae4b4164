import enum

from core.exceptions import InvalidParameterError
from curves.kinds import CurveKind


class IndexKind(enum.Enum):
    """
    Scalar inequality indices.

    qZI, qDI and G1-G3 integrate quantile curves; GI, BI, ZI and DI are the
    classical mean-based indices.
    """
    QZI = 'qZI'
    QDI = 'qDI'
    G1 = 'G1'
    G2 = 'G2'
    G3 = 'G3'
    GI = 'GI'
    BI = 'BI'
    ZI = 'ZI'
    DI = 'DI'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for kind in cls:
            if kind.value.lower() == text.lower():
                return kind
        raise InvalidParameterError(
            f"unknown index kind {value!r}; choose from {', '.join(kind.value for kind in cls)}"
        )

    @property
    def is_classical(self):
        return self in CLASSICAL_INDEX_KINDS

    @property
    def curve(self):
        """The curve this index integrates."""
        return _CURVES[self]

    @property
    def gini_type(self):
        """Indices of the form 2 * int (p - C(p)) dp."""
        return self in (IndexKind.G1, IndexKind.G2, IndexKind.G3, IndexKind.GI)

    def __str__(self):
        return self.value


_CURVES = {
    IndexKind.QZI: CurveKind.QZ,
    IndexKind.QDI: CurveKind.QD,
    IndexKind.G1: CurveKind.L1,
    IndexKind.G2: CurveKind.L2,
    IndexKind.G3: CurveKind.L3,
    IndexKind.GI: CurveKind.L,
    IndexKind.BI: CurveKind.B,
    IndexKind.ZI: CurveKind.Z,
    IndexKind.DI: CurveKind.D,
}

CLOSED_FORM_KINDS = (IndexKind.QZI, IndexKind.QDI)
SAMPLE_KINDS = (IndexKind.QZI, IndexKind.QDI, IndexKind.G1, IndexKind.G2, IndexKind.G3)
CLASSICAL_INDEX_KINDS = (IndexKind.GI, IndexKind.BI, IndexKind.ZI, IndexKind.DI)
