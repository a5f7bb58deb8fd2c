import functools
import typing
from dataclasses import dataclass
from fractions import Fraction

from amice_utils.amiceexceptions import ParseError


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class NormValue:
    """ An exact norm |p|^e = p^(-e), stored by its rational exponent e.

    Larger exponents are smaller norms. ``exponent=None`` is the norm of zero, smaller than every
    other norm. ``bound`` marks a value that is only known to be an upper bound on the true norm
    (the norm of something known modulo p^A but indistinguishable from zero); it takes no part
    in comparisons.

    >>> NormValue.omega(2) < NormValue.one()
    True
    >>> NormValue.of(1) * NormValue.of(Fraction(1, 2))
    NormValue(exponent=Fraction(3, 2), bound=False)
    """
    exponent: typing.Optional[Fraction]
    bound: bool = False

    def __post_init__(self):
        if self.exponent is not None and not isinstance(self.exponent, Fraction):
            object.__setattr__(self, "exponent", Fraction(self.exponent))

    @classmethod
    def of(cls, exponent: typing.Union[int, Fraction], bound: bool = False):
        return cls(Fraction(exponent), bound)

    @classmethod
    def zero(cls):
        return cls(None)

    @classmethod
    def one(cls):
        return cls(Fraction(0))

    @classmethod
    def omega(cls, p: int):
        """ omega = |p|^(1/(p-1)), the radius of convergence of exp """
        return cls(Fraction(1, p - 1))

    @classmethod
    def parse(cls, text: str):
        """ Read an exponent written as an integer or "num/den" """
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"Can't read a norm exponent from {text!r}")

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __eq__(self, other):
        if not isinstance(other, NormValue):
            return NotImplemented
        return self.exponent == other.exponent

    def __hash__(self):
        return hash(self.exponent)

    def __lt__(self, other):
        if not isinstance(other, NormValue):
            return NotImplemented
        if self.exponent is None:
            return other.exponent is not None
        if other.exponent is None:
            return False
        return self.exponent > other.exponent

    def __mul__(self, other):
        if not isinstance(other, NormValue):
            return NotImplemented
        bound = self.bound or other.bound
        if self.is_zero or other.is_zero:
            return NormValue(None, bound)
        return NormValue(self.exponent + other.exponent, bound)

    def __truediv__(self, other):
        if not isinstance(other, NormValue):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("Division by the zero norm")
        if self.is_zero:
            return NormValue(None, self.bound)
        return NormValue(self.exponent - other.exponent, self.bound)

    def __pow__(self, r: typing.Union[int, Fraction]):
        r = Fraction(r)
        if self.is_zero:
            if r <= 0:
                raise ZeroDivisionError("Non-positive power of the zero norm")
            return self
        return NormValue(self.exponent * r, self.bound)

    def inverse(self):
        return NormValue.one() / self

    def as_bound(self, bound: bool = True):
        return NormValue(self.exponent, bound)

    def to_float(self, p: int) -> float:
        if self.is_zero:
            return 0.0
        return float(p) ** float(-self.exponent)

    def to_json(self) -> dict:
        return {
            "exponent": None if self.is_zero else str(self.exponent),
            "bound": self.bound,
        }

    @classmethod
    def from_json(cls, obj: dict):
        try:
            exponent = obj["exponent"]
            return cls(None if exponent is None else Fraction(exponent), bool(obj.get("bound", False)))
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"Bad norm value {obj!r}")

    def __str__(self):
        if self.is_zero:
            return "0"
        prefix = "<= " if self.bound else ""
        return f"{prefix}|p|^({self.exponent})"


def norm_max(*norms: NormValue) -> NormValue:
    return max(norms) if norms else NormValue.zero()
