""" Capped-precision arithmetic in Q_p.

A nonzero PAdic is p^v * unit with the unit coprime to p. An *exact* value is exactly that
number (exact values keep a signed unit with |unit| < p^prec, so small negative integers stay
exact); an inexact value is only known modulo p^(v + prec) and keeps its unit as the canonical
residue in [1, p^prec). Two special states exist:

  - the exact zero (valuation None)
  - an indistinguishable zero O(p^A): known to be 0 modulo p^A and nothing more
    (unit 0, prec 0, valuation A)

The operators (+, -, *, /, **) are lenient and may return O(p^A). ``arith`` is the strict entry
point: it raises PrecisionExhausted instead of handing back a value known to zero digits.
"""
import logging
import math
import typing
from dataclasses import dataclass
from fractions import Fraction

from amice_utils.amiceexceptions import (
    DivisionByZero,
    IndeterminateValuation,
    ParseError,
    PrecisionExhausted,
    PrimeMismatch,
)
from amice_utils.config import DEFAULT_PRECISION
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.numtheory import prime_power, split, valuation as int_valuation

logger = logging.getLogger(__name__)

Rational = typing.Union[int, Fraction]


@dataclass(frozen=True)
class PAdic:
    prime: int
    valuation: typing.Optional[int]
    unit: int
    prec: int
    exact: bool = False

    def __post_init__(self):
        if self.valuation is None:
            if self.unit != 0 or not self.exact:
                raise ValueError("The exact zero has unit 0 and is exact")
        elif self.unit == 0:
            if self.exact or self.prec != 0:
                raise ValueError("An indistinguishable zero has prec 0 and isn't exact")
        else:
            if self.unit % self.prime == 0:
                raise ValueError(f"Unit {self.unit} isn't coprime to {self.prime}")
            if self.prec < 1:
                raise ValueError(f"A nonzero value needs prec >= 1, got {self.prec}")

    # --- constructors -----------------------------------------------------------------------

    @classmethod
    def zero(cls, prime: int, prec: int = DEFAULT_PRECISION):
        return cls(prime, None, 0, prec, True)

    @classmethod
    def one(cls, prime: int, prec: int = DEFAULT_PRECISION):
        return cls(prime, 0, 1, prec, True)

    @classmethod
    def indistinguishable(cls, prime: int, absolute: int):
        """ O(p^absolute) """
        return cls(prime, absolute, 0, 0, False)

    @classmethod
    def from_int(cls, m: int, prime: int, prec: int = DEFAULT_PRECISION):
        return _exact_result(m, 0, prime, prec)

    @classmethod
    def from_rational(cls, value: typing.Union[Rational, str], prime: int, prec: int = DEFAULT_PRECISION):
        """ Exact when the denominator is a power of p and the unit fits, otherwise the unit is
        reduced modulo p^prec """
        if isinstance(value, str):
            return cls.from_string(value, prime, prec)
        q = Fraction(value)
        if q == 0:
            return cls.zero(prime, prec)
        vn, un = split(q.numerator, prime)
        vd, ud = split(q.denominator, prime)
        if ud == 1:
            return _exact_result(un, vn - vd, prime, prec)
        m = prime_power(prime, prec)
        return cls(prime, vn - vd, un * pow(ud, -1, m) % m, prec)

    @classmethod
    def from_string(cls, text: str, prime: int, prec: int = DEFAULT_PRECISION):
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"Can't read a rational number from {text!r}")
        return cls.from_rational(q, prime, prec)

    @classmethod
    def from_json(cls, obj, prime: int, prec: int = DEFAULT_PRECISION):
        """ Accepts an integer, a "num/den" string or {"v", "unit", "prec"[, "exact"]} """
        match obj:
            case bool():
                raise ParseError(f"Not a p-adic number: {obj!r}")
            case int():
                return cls.from_int(obj, prime, prec)
            case str():
                return cls.from_string(obj, prime, prec)
            case {"v": None, **rest}:
                return cls.zero(prime, rest.get("prec", prec))
            case {"v": int(v), "unit": unit, **rest}:
                try:
                    u = int(unit)
                    p_digits = int(rest.get("prec", prec))
                except (TypeError, ValueError):
                    raise ParseError(f"Bad p-adic number {obj!r}")
                if u == 0:
                    return cls.indistinguishable(prime, v)
                if p_digits < 1:
                    raise ParseError(f"Nonzero p-adic number with prec < 1: {obj!r}")
                if u % prime == 0:
                    raise ParseError(f"Unit {u} isn't coprime to {prime}")
                if rest.get("exact", False):
                    return _exact_result(u, v, prime, p_digits)
                return cls(prime, v, u % prime_power(prime, p_digits), p_digits)
            case _:
                raise ParseError(f"Not a p-adic number: {obj!r}")

    # --- properties -------------------------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation is None

    @property
    def is_indistinguishable_zero(self) -> bool:
        return self.valuation is not None and self.unit == 0

    @property
    def is_zero(self) -> bool:
        """ Exact zero, or zero as far as the known digits go """
        return self.unit == 0

    @property
    def absolute_precision(self) -> typing.Union[int, float]:
        if self.exact:
            return math.inf
        return self.valuation + self.prec

    @property
    def cap(self) -> int:
        return max(self.prec, 1)

    @property
    def residue(self) -> int:
        """ The unit as a residue in [0, p^prec) """
        if self.is_zero:
            return 0
        return self.unit % prime_power(self.prime, self.prec)

    def to_int(self) -> typing.Optional[int]:
        """ The integer this value is, when it is exactly an integer """
        if self.is_exact_zero:
            return 0
        if self.exact and self.valuation >= 0:
            return self.unit * prime_power(self.prime, self.valuation)
        return None

    def lift(self) -> Fraction:
        """ A rational representative (the value itself when exact) """
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    # --- precision management ---------------------------------------------------------------

    def with_cap(self, cap: int):
        """ Change the digit budget. Exact values keep their value (and gain room to stay exact);
        inexact values can only lose digits. """
        if self.is_exact_zero:
            return PAdic.zero(self.prime, cap)
        if self.is_indistinguishable_zero:
            return self
        if self.exact:
            return _exact_result(self.unit, self.valuation, self.prime, cap)
        if self.prec <= cap:
            return self
        return PAdic(self.prime, self.valuation, self.unit % prime_power(self.prime, cap), cap)

    def with_absolute_precision(self, absolute: int):
        """ Forget every digit at or beyond p^absolute """
        if self.is_exact_zero:
            return self
        if self.is_indistinguishable_zero:
            return PAdic.indistinguishable(self.prime, min(self.valuation, absolute))
        if self.valuation >= absolute:
            return PAdic.indistinguishable(self.prime, absolute)
        prec = absolute - self.valuation
        if not self.exact:
            prec = min(prec, self.prec)
        return PAdic(self.prime, self.valuation, self.unit % prime_power(self.prime, prec), prec)

    def agrees(self, other) -> bool:
        """ True when self and other are equal as far as both are known """
        return (self - other).is_zero

    # --- arithmetic -------------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PAdic):
            if other.prime != self.prime:
                raise PrimeMismatch(f"Can't combine {self.prime}-adic and {other.prime}-adic values")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            # an O(p^A) has no digits of its own, so it lends its absolute precision as the cap
            cap = max(self.valuation, 1) if self.is_indistinguishable_zero else self.cap
            return PAdic.from_rational(other, self.prime, cap)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        if self.exact:
            return PAdic(self.prime, self.valuation, -self.unit, self.prec, True)
        return PAdic(self.prime, self.valuation, -self.unit % prime_power(self.prime, self.prec), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise DivisionByZero(f"Can't invert {self}")
        if self.exact and abs(self.unit) == 1:
            return PAdic(self.prime, -self.valuation, self.unit, self.prec, True)
        m = prime_power(self.prime, self.prec)
        return PAdic(self.prime, -self.valuation, pow(self.unit % m, -1, m), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _div(other, self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = PAdic.one(self.prime, self.cap)
        base = self
        while n:
            if n & 1:
                result = _mul(result, base)
            n >>= 1
            if n:
                base = _mul(base, base)
        return result

    def __str__(self):
        if self.is_exact_zero:
            return "0"
        p = self.prime
        if self.is_indistinguishable_zero:
            return f"O({p}^{self.valuation})"
        if self.exact:
            return f"{p}^{self.valuation} * {self.unit} :: exact"
        return f"{p}^{self.valuation} * {self.residue} :: O({p}^{self.valuation + self.prec})"

    def to_json(self) -> dict:
        if self.is_exact_zero:
            return {"v": None, "unit": "0", "prec": self.prec, "exact": True}
        unit = self.unit if self.exact else self.residue
        return {"v": self.valuation, "unit": str(unit), "prec": self.prec, "exact": self.exact}


def _exact_result(s: int, v: int, p: int, cap: int) -> PAdic:
    """ The exact number s * p^v, demoted to a capped value when its unit outgrows p^cap """
    if s == 0:
        return PAdic.zero(p, cap)
    k, u = split(s, p)
    if abs(u) < prime_power(p, cap):
        return PAdic(p, v + k, u, cap, True)
    return PAdic(p, v + k, u % prime_power(p, cap), cap)


def _add(x: PAdic, y: PAdic) -> PAdic:
    p = x.prime
    if x.is_exact_zero:
        return y
    if y.is_exact_zero:
        return x
    vmin = min(x.valuation, y.valuation)
    s = x.unit * prime_power(p, x.valuation - vmin) + y.unit * prime_power(p, y.valuation - vmin)
    if x.exact and y.exact:
        return _exact_result(s, vmin, p, max(x.prec, y.prec))

    absolute = min(x.absolute_precision, y.absolute_precision)
    rel = absolute - vmin
    if rel <= 0:
        return PAdic.indistinguishable(p, absolute)
    s %= prime_power(p, rel)
    if s == 0:
        return PAdic.indistinguishable(p, absolute)
    k = int_valuation(s, p)
    prec = min(rel - k, max(x.prec, y.prec))
    return PAdic(p, vmin + k, (s // prime_power(p, k)) % prime_power(p, prec), prec)


def _mul(x: PAdic, y: PAdic) -> PAdic:
    p = x.prime
    if x.is_exact_zero or y.is_exact_zero:
        return PAdic.zero(p, max(x.cap, y.cap))
    v = x.valuation + y.valuation
    if x.is_indistinguishable_zero or y.is_indistinguishable_zero:
        return PAdic.indistinguishable(p, v)
    if x.exact and y.exact:
        return _exact_result(x.unit * y.unit, v, p, max(x.prec, y.prec))
    prec = min(d.prec for d in (x, y) if not d.exact)
    return PAdic(p, v, (x.unit * y.unit) % prime_power(p, prec), prec)


def _div(x: PAdic, y: PAdic) -> PAdic:
    if y.is_zero:
        raise DivisionByZero(f"Can't divide {x} by {y}")
    if x.is_exact_zero:
        return PAdic.zero(x.prime, max(x.cap, y.cap))
    if x.is_indistinguishable_zero:
        return PAdic.indistinguishable(x.prime, x.valuation - y.valuation)
    if x.exact and y.exact and x.unit % y.unit == 0:
        return _exact_result(x.unit // y.unit, x.valuation - y.valuation, x.prime, max(x.prec, y.prec))
    return _mul(x, y.inverse())


def arith(op: str, x: PAdic, y: typing.Union[PAdic, Rational, None] = None) -> PAdic:
    """ Strict arithmetic: the result always carries at least one known digit

    >>> str(arith("add", PAdic.from_int(1, 2, 5), PAdic.from_int(1, 2, 5)))
    '2^1 * 1 :: exact'
    >>> arith("inv", PAdic.from_int(2, 3, 3)).unit
    14
    """
    match op:
        case "add":
            result = x + y
        case "sub":
            result = x - y
        case "mul":
            result = x * y
        case "div":
            result = x / y
        case "inv":
            result = x.inverse()
        case "pow":
            if isinstance(y, PAdic):
                n = y.to_int()
                if n is None:
                    raise ParseError(f"pow needs an integer exponent, got {y}")
                y = n
            result = x ** y
        case "neg":
            result = -x
        case _:
            raise ParseError(f"Unknown p-adic operation {op}")

    if result.is_indistinguishable_zero:
        raise PrecisionExhausted(f"{op} of {x} and {y} is known to zero digits: {result}")
    return result


def norm(x: PAdic) -> NormValue:
    """ |x| = |p|^v

    >>> norm(PAdic.from_int(6, 2))
    NormValue(exponent=Fraction(1, 1), bound=False)
    """
    if x.is_exact_zero:
        return NormValue.zero()
    if x.is_indistinguishable_zero:
        raise IndeterminateValuation(f"{x} has valuation at least {x.valuation}", at_least=x.valuation)
    return NormValue.of(x.valuation)


def norm_or_bound(x: PAdic) -> NormValue:
    """ Like norm, but an indistinguishable zero O(p^A) gives |p|^A marked as an upper bound """
    if x.is_indistinguishable_zero:
        return NormValue.of(x.valuation, bound=True)
    return norm(x)
