import logging
import typing
from dataclasses import dataclass, field
from fractions import Fraction

from amice_utils.amiceexceptions import ParseError, PrimeMismatch
from amice_utils.config import DEFAULT_PRECISION
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.padic import PAdic, Rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaurentWindow:
    """ A finitely supported Laurent series sum a_i T^i standing for an element of the Amice ring.

    ``coeffs`` holds only coefficients that are nonzero at their precision. Positions whose
    coefficient cancelled down to an indistinguishable zero O(p^A) are kept in ``unresolved``
    (index -> A) so norms stay honest. ``i_min``/``i_max`` are the declared support bounds;
    ``norm_faithful`` is the caller's promise that every coefficient of maximal |.|_1 lies inside
    them; ``truncated`` records that some routine dropped terms outside its working window.
    Build instances with ``LaurentWindow.build``.
    """
    prime: int
    coeffs: dict = field(default_factory=dict)
    i_min: int = 0
    i_max: int = 0
    norm_faithful: bool = True
    truncated: bool = False
    unresolved: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.i_min > self.i_max:
            raise ValueError(f"Empty window bounds [{self.i_min}, {self.i_max}]")
        for i in list(self.coeffs) + list(self.unresolved):
            if not self.i_min <= i <= self.i_max:
                raise ValueError(f"Exponent {i} outside window [{self.i_min}, {self.i_max}]")

    @classmethod
    def build(cls, prime: int, raw: typing.Mapping[int, PAdic], i_min: int = None, i_max: int = None,
              norm_faithful: bool = True, truncated: bool = False):
        """ Sort raw coefficients into stored / unresolved, dropping exact zeros. Entries outside
        explicit bounds are dropped and mark the window truncated. """
        if i_min is None or i_max is None:
            keys = [i for i, c in raw.items() if not c.is_exact_zero]
            lo, hi = (min(keys), max(keys)) if keys else (0, 0)
            i_min = lo if i_min is None else i_min
            i_max = hi if i_max is None else i_max
            i_min, i_max = min(i_min, i_max), max(i_min, i_max)

        coeffs, unresolved = {}, {}
        for i, c in raw.items():
            if c.prime != prime:
                raise PrimeMismatch(f"Coefficient {c} isn't {prime}-adic")
            if c.is_exact_zero:
                continue
            if not i_min <= i <= i_max:
                truncated = True
                continue
            if c.is_indistinguishable_zero:
                unresolved[i] = c.valuation
            else:
                coeffs[i] = c
        return cls(prime, dict(sorted(coeffs.items())), i_min, i_max, norm_faithful, truncated,
                   dict(sorted(unresolved.items())))

    @classmethod
    def zero(cls, prime: int, i_min: int = 0, i_max: int = 0):
        return cls(prime, {}, i_min, i_max)

    @classmethod
    def monomial(cls, prime: int, i: int, c: typing.Union[PAdic, Rational] = 1, prec: int = DEFAULT_PRECISION):
        if not isinstance(c, PAdic):
            c = PAdic.from_rational(c, prime, prec)
        return cls.build(prime, {i: c}, i, i)

    @classmethod
    def constant(cls, prime: int, c: typing.Union[PAdic, Rational] = 1, prec: int = DEFAULT_PRECISION):
        return cls.monomial(prime, 0, c, prec)

    @classmethod
    def from_rationals(cls, prime: int, coeffs: typing.Mapping[int, Rational], prec: int = DEFAULT_PRECISION,
                       i_min: int = None, i_max: int = None, norm_faithful: bool = True):
        raw = {i: PAdic.from_rational(c, prime, prec) for i, c in coeffs.items()}
        return cls.build(prime, raw, i_min, i_max, norm_faithful)

    # --- access -----------------------------------------------------------------------------

    @property
    def cap(self) -> int:
        return max((c.cap for c in self.coeffs.values()), default=DEFAULT_PRECISION)

    @property
    def is_zero(self) -> bool:
        """ True when no coefficient is known to be nonzero """
        return not self.coeffs

    @property
    def support(self) -> list[int]:
        return list(self.coeffs)

    def coefficient(self, i: int) -> PAdic:
        if i in self.coeffs:
            return self.coeffs[i]
        if i in self.unresolved:
            return PAdic.indistinguishable(self.prime, self.unresolved[i])
        return PAdic.zero(self.prime, self.cap)

    def items(self) -> typing.Iterator[tuple[int, PAdic]]:
        """ Stored coefficients and unresolved positions (as O(p^A)), by increasing exponent """
        keys = sorted(set(self.coeffs) | set(self.unresolved))
        for i in keys:
            yield i, self.coefficient(i)

    # --- arithmetic -------------------------------------------------------------------------

    def _flags(self, other) -> dict:
        return {
            "norm_faithful": self.norm_faithful and other.norm_faithful,
            "truncated": self.truncated or other.truncated,
        }

    def _as_window(self, other):
        if isinstance(other, LaurentWindow):
            if other.prime != self.prime:
                raise PrimeMismatch(f"Can't combine {self.prime}-adic and {other.prime}-adic series")
            return other
        if isinstance(other, (PAdic, int, Fraction)):
            return LaurentWindow.constant(self.prime, other, self.cap)
        return NotImplemented

    def __add__(self, other):
        other = self._as_window(other)
        if other is NotImplemented:
            return NotImplemented
        raw = dict(self.items())
        for i, c in other.items():
            raw[i] = raw[i] + c if i in raw else c
        return LaurentWindow.build(self.prime, raw, min(self.i_min, other.i_min), max(self.i_max, other.i_max),
                                   **self._flags(other))

    __radd__ = __add__

    def __neg__(self):
        return self.map_coefficients(lambda i, c: -c)

    def __sub__(self, other):
        other = self._as_window(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._as_window(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (PAdic, int, Fraction)):
            return self.scale(other)
        other = self._as_window(other)
        if other is NotImplemented:
            return NotImplemented
        raw: dict[int, PAdic] = {}
        right = list(other.items())
        for i, a in self.items():
            for j, b in right:
                term = a * b
                k = i + j
                raw[k] = raw[k] + term if k in raw else term
        return LaurentWindow.build(self.prime, raw, self.i_min + other.i_min, self.i_max + other.i_max,
                                   **self._flags(other))

    __rmul__ = __mul__

    def multiply_within(self, other: "LaurentWindow", lo: int, hi: int) -> "LaurentWindow":
        """ The product truncated to [lo, hi], skipping terms that land outside """
        raw: dict[int, PAdic] = {}
        right = list(other.items())
        dropped = False
        for i, a in self.items():
            for j, b in right:
                k = i + j
                if not lo <= k <= hi:
                    dropped = True
                    continue
                term = a * b
                raw[k] = raw[k] + term if k in raw else term
        flags = self._flags(other)
        flags["truncated"] = flags["truncated"] or dropped
        return LaurentWindow.build(self.prime, raw, lo, hi, **flags)

    def scale(self, c) -> "LaurentWindow":
        return self.map_coefficients(lambda i, a: a * c)

    def map_coefficients(self, fn: typing.Callable[[int, PAdic], PAdic]) -> "LaurentWindow":
        raw = {i: fn(i, c) for i, c in self.items()}
        return LaurentWindow.build(self.prime, raw, self.i_min, self.i_max, self.norm_faithful, self.truncated)

    def shift(self, k: int) -> "LaurentWindow":
        """ Multiply by T^k """
        raw = {i + k: c for i, c in self.items()}
        return LaurentWindow.build(self.prime, raw, self.i_min + k, self.i_max + k, self.norm_faithful,
                                   self.truncated)

    def truncate(self, lo: int, hi: int) -> "LaurentWindow":
        """ Keep exponents in [lo, hi]; dropping a known-nonzero coefficient marks the result """
        dropped = any(not lo <= i <= hi for i in self.coeffs)
        raw = {i: c for i, c in self.items() if lo <= i <= hi}
        return LaurentWindow.build(self.prime, raw, lo, hi, self.norm_faithful, self.truncated or dropped)

    def with_bounds(self, lo: int, hi: int) -> "LaurentWindow":
        """ Widen (or narrow, truncating) the declared bounds """
        return self.truncate(min(lo, hi), max(lo, hi))

    def with_absolute_precision(self, absolute: int) -> "LaurentWindow":
        return self.map_coefficients(lambda i, c: c.with_absolute_precision(absolute))

    def with_cap(self, cap: int) -> "LaurentWindow":
        return self.map_coefficients(lambda i, c: c.with_cap(cap))

    def agrees(self, other) -> bool:
        """ Equal coefficient by coefficient, as far as the known digits go """
        return (self - other).is_zero

    # --- serialization ----------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "coeffs": [[i, c.to_json()] for i, c in self.items()],
            "i_min": self.i_min,
            "i_max": self.i_max,
            "norm_faithful": self.norm_faithful,
            "truncated": self.truncated,
        }

    @classmethod
    def from_json(cls, obj: dict, prime: int = None, prec: int = DEFAULT_PRECISION):
        try:
            p = int(obj.get("prime", prime))
            raw = {}
            for i, c in obj["coeffs"]:
                if int(i) in raw:
                    raise ParseError(f"Exponent {i} appears twice")
                raw[int(i)] = PAdic.from_json(c, p, prec)
            window = cls.build(p, raw, obj.get("i_min"), obj.get("i_max"),
                               bool(obj.get("norm_faithful", True)), bool(obj.get("truncated", False)))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Bad series: {e}")
        if prime is not None and p != prime:
            logger.warning(f"Series prime {p} overrides --p {prime}")
        return window

    def __str__(self):
        if not self.coeffs and not self.unresolved:
            return "0"
        return " + ".join(f"({c})*T^{i}" for i, c in self.items())


def gauss_norm(f: LaurentWindow, rho: NormValue = NormValue.one()) -> NormValue:
    """ sup_i |a_i| rho^i, in exponent arithmetic. Unresolved positions that could dominate turn
    the result into an upper bound. """
    if rho.is_zero:
        raise ValueError("gauss_norm needs rho > 0")
    if not f.norm_faithful:
        logger.debug("Gauss norm of a window that isn't norm-faithful")
    best = NormValue.zero()
    for i, c in f.coeffs.items():
        best = max(best, NormValue.of(c.valuation + i * rho.exponent))
    for i, a in f.unresolved.items():
        candidate = NormValue.of(a + i * rho.exponent)
        if candidate > best:
            best = candidate.as_bound()
    return best


def tripartite(f: LaurentWindow) -> tuple[LaurentWindow, PAdic, LaurentWindow]:
    """ Split f = g^- + a_0 + g^+ by exponent sign """
    minus = {i: c for i, c in f.items() if i < 0}
    plus = {i: c for i, c in f.items() if i > 0}
    g_minus = LaurentWindow.build(f.prime, minus, min(f.i_min, -1), -1, f.norm_faithful, f.truncated)
    g_plus = LaurentWindow.build(f.prime, plus, 1, max(f.i_max, 1), f.norm_faithful, f.truncated)
    return g_minus, f.coefficient(0), g_plus
