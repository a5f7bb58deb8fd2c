import logging
import typing
from dataclasses import dataclass
from enum import Enum

from amice_utils.amiceexceptions import ParseError
from amice_utils.config import DEFAULT_PRECISION
from amice_utils.padic.padic import PAdic
from amice_utils.series.laurentwindow import LaurentWindow
from amice_utils.series.qparam import QParam

logger = logging.getLogger(__name__)


class OperatorKind(Enum):
    DIFF = "diff"
    QDIFF = "qdiff"

    def __str__(self):
        return str(self.value)

    @classmethod
    def from_string(cls, kind):
        match kind:
            case "diff" | "Diff" | "differential":
                return cls(OperatorKind.DIFF)
            case "qdiff" | "QDiff" | "q-difference":
                return cls(OperatorKind.QDIFF)
            case _:
                raise ParseError(f"Can't match {kind=}")


@dataclass(frozen=True)
class OperatorSpec:
    """ A rank-one operator: T d/dT - g (kind diff, stored as ``g``) or sigma_q - a (kind qdiff,
    stored as ``a`` with its ``q``) """
    kind: OperatorKind
    series: LaurentWindow
    q: typing.Optional[QParam] = None

    def __post_init__(self):
        match self.kind:
            case OperatorKind.DIFF:
                if self.q is not None:
                    raise ValueError("A differential operator has no q")
            case OperatorKind.QDIFF:
                if self.q is None:
                    raise ValueError("A q-difference operator needs q")
                if self.q.prime != self.series.prime:
                    raise ValueError(f"q is {self.q.prime}-adic, the series {self.series.prime}-adic")

    @classmethod
    def diff(cls, g: LaurentWindow):
        return cls(OperatorKind.DIFF, g)

    @classmethod
    def qdiff(cls, a: LaurentWindow, q: QParam):
        return cls(OperatorKind.QDIFF, a, q)

    @property
    def prime(self) -> int:
        return self.series.prime

    @property
    def g(self) -> LaurentWindow:
        if self.kind is not OperatorKind.DIFF:
            raise AttributeError("Only differential operators have g")
        return self.series

    @property
    def a(self) -> LaurentWindow:
        if self.kind is not OperatorKind.QDIFF:
            raise AttributeError("Only q-difference operators have a")
        return self.series

    @property
    def is_trivial(self) -> bool:
        """ T d/dT with g = 0, or sigma_q with a = 1 """
        if self.kind is OperatorKind.DIFF:
            return self.series.is_zero
        return (self.series - 1).is_zero

    def to_json(self) -> dict:
        if self.kind is OperatorKind.DIFF:
            return {"kind": str(self.kind), "g": self.series.to_json()}
        return {"kind": str(self.kind), "q": self.q.q.to_json(), "a": self.series.to_json()}

    @classmethod
    def from_json(cls, obj: dict, prime: int = None, prec: int = DEFAULT_PRECISION):
        try:
            kind = OperatorKind.from_string(obj["kind"])
            key = "g" if kind is OperatorKind.DIFF else "a"
            series = LaurentWindow.from_json(obj[key], prime, prec)
        except (KeyError, TypeError) as e:
            raise ParseError(f"Bad operator: {e}")
        if kind is OperatorKind.DIFF:
            return cls.diff(series)
        if "q" not in obj:
            raise ParseError("A q-difference operator needs a q field")
        return cls.qdiff(series, QParam(PAdic.from_json(obj["q"], series.prime, prec)))

    def __str__(self):
        if self.kind is OperatorKind.DIFF:
            return f"T d/dT - ({self.series})"
        return f"sigma_q - ({self.series}), q = {self.q.q}"
