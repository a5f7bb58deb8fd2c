""" Finite-length p-typical Witt vectors over Q_p and their phantom (ghost) components.

Ring operations go through ghost coordinates, which is valid because p is invertible in Q_p:
x op y = unghost(ghost(x) op ghost(y)). unghost divides slot m by p^m, so slot m of the result
is known to m fewer absolute digits than the phantom component it came from.
"""
import logging
import typing
from dataclasses import dataclass
from enum import Enum

from amice_utils.amiceexceptions import IndeterminateValuation, ParseError, PrecisionExhausted, PrimeMismatch
from amice_utils.config import DEFAULT_PRECISION
from amice_utils.padic.normvalue import NormValue, norm_max
from amice_utils.padic.numtheory import prime_power
from amice_utils.padic.padic import PAdic, norm_or_bound

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WittVector:
    prime: int
    components: tuple[PAdic, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("A Witt vector needs at least one component")
        for c in self.components:
            if c.prime != self.prime:
                raise PrimeMismatch(f"Component {c} isn't {self.prime}-adic")

    @classmethod
    def zero(cls, prime: int, length: int, prec: int = DEFAULT_PRECISION):
        return cls(prime, tuple(PAdic.zero(prime, prec) for _ in range(length)))

    @classmethod
    def teichmuller(cls, a: PAdic, length: int):
        """ (a, 0, 0, ...) """
        return cls(a.prime, (a,) + tuple(PAdic.zero(a.prime, a.cap) for _ in range(length - 1)))

    @classmethod
    def from_rationals(cls, prime: int, values: typing.Iterable, prec: int = DEFAULT_PRECISION):
        return cls(prime, tuple(PAdic.from_rational(v, prime, prec) for v in values))

    @property
    def length(self) -> int:
        return len(self.components)

    @property
    def prec(self) -> int:
        """ The smallest digit cap among the components """
        return min(c.cap for c in self.components)

    def __getitem__(self, m: int) -> PAdic:
        return self.components[m]

    def __iter__(self):
        return iter(self.components)

    def with_cap(self, cap: int) -> "WittVector":
        return WittVector(self.prime, tuple(c.with_cap(cap) for c in self.components))

    def agrees(self, other: "WittVector") -> bool:
        return self.length == other.length and all(x.agrees(y) for x, y in zip(self, other))

    def __add__(self, other):
        return witt_ring("add", self, other)

    def __mul__(self, other):
        return witt_ring("mul", self, other)

    def to_json(self) -> dict:
        return {"length": self.length, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, obj: dict, prime: int, prec: int = DEFAULT_PRECISION):
        try:
            components = tuple(PAdic.from_json(c, prime, prec) for c in obj["components"])
            length = int(obj.get("length", len(components)))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Bad Witt vector: {e}")
        if length != len(components):
            raise ParseError(f"Witt vector declares length {length} but has {len(components)} components")
        return cls(prime, components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class PhantomVector:
    prime: int
    components: tuple[PAdic, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for c in self.components:
            if c.prime != self.prime:
                raise PrimeMismatch(f"Component {c} isn't {self.prime}-adic")

    @classmethod
    def from_rationals(cls, prime: int, values: typing.Iterable, prec: int = DEFAULT_PRECISION):
        return cls(prime, tuple(PAdic.from_rational(v, prime, prec) for v in values))

    @property
    def length(self) -> int:
        return len(self.components)

    def __getitem__(self, m: int) -> PAdic:
        return self.components[m]

    def __iter__(self):
        return iter(self.components)

    def agrees(self, other: "PhantomVector") -> bool:
        return self.length == other.length and all(x.agrees(y) for x, y in zip(self, other))

    def to_json(self) -> dict:
        return {"length": self.length, "phantom": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, obj: dict, prime: int, prec: int = DEFAULT_PRECISION):
        try:
            return cls(prime, tuple(PAdic.from_json(c, prime, prec) for c in obj["phantom"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Bad phantom vector: {e}")

    def __str__(self):
        return "<" + ", ".join(str(c) for c in self.components) + ">"


def ghost(x: WittVector, length: int = None) -> PhantomVector:
    """ phi_m = lambda_0^(p^m) + p lambda_1^(p^(m-1)) + ... + p^m lambda_m

    Asking for more phantom components than x has pads x with zeros.

    >>> str(ghost(WittVector.from_rationals(2, [1, 1])))
    '<2^0 * 1 :: exact, 2^0 * 3 :: exact>'
    """
    p = x.prime
    length = x.length if length is None else length
    components = list(x.components[:length])
    components += [PAdic.zero(p, x.prec)] * (length - len(components))

    phantom = []
    for m in range(length):
        phi = PAdic.zero(p, x.prec)
        for j in range(m + 1):
            if components[j].is_exact_zero:
                continue
            phi = phi + prime_power(p, j) * components[j] ** prime_power(p, m - j)
        phantom.append(phi)
    return PhantomVector(p, tuple(phantom))


def unghost(phi: PhantomVector) -> WittVector:
    """ The triangular solve lambda_m = (phi_m - sum_{j<m} p^j lambda_j^(p^(m-j))) / p^m

    >>> [c.to_int() for c in unghost(PhantomVector.from_rationals(2, [2, 2]))]
    [2, -1]
    """
    p = phi.prime
    if not phi.components:
        raise ValueError("Can't unghost an empty phantom vector")
    components = []
    for m, phi_m in enumerate(phi.components):
        numerator = phi_m
        for j, lam in enumerate(components):
            if lam.is_exact_zero:
                continue
            numerator = numerator - prime_power(p, j) * lam ** prime_power(p, m - j)
        lam_m = numerator / prime_power(p, m)
        if lam_m.is_indistinguishable_zero:
            if lam_m.valuation <= 0:
                raise PrecisionExhausted(f"Witt component {m} is only known as {lam_m}")
            logger.debug(f"Witt component {m} cancelled down to {lam_m}")
        components.append(lam_m)
    return WittVector(p, tuple(components))


def witt_ring(op: str, x: WittVector, y: WittVector) -> WittVector:
    """ Witt vector addition or multiplication through ghost coordinates

    >>> one = WittVector.from_rationals(2, [1, 0])
    >>> [c.to_int() for c in witt_ring("add", one, one)]
    [2, -1]
    """
    if x.prime != y.prime:
        raise PrimeMismatch(f"Can't combine {x.prime}- and {y.prime}-typical Witt vectors")
    if x.length != y.length:
        raise ValueError(f"Witt vectors of lengths {x.length} and {y.length}")
    gx, gy = ghost(x), ghost(y)
    match op:
        case "add":
            combined = [a + b for a, b in zip(gx, gy)]
        case "sub":
            combined = [a - b for a, b in zip(gx, gy)]
        case "mul":
            combined = [a * b for a, b in zip(gx, gy)]
        case _:
            raise ValueError(f"Unknown Witt ring operation {op}")
    return unghost(PhantomVector(x.prime, tuple(combined)))


class SlotVerdict(Enum):
    PASS = "pass"
    FAIL = "fail"

    def __str__(self):
        return str(self.value)


def slot_integrality(c: PAdic, strict: bool) -> SlotVerdict:
    """ |c| < 1 (strict) or |c| <= 1, decided from the known digits """
    threshold = 1 if strict else 0
    if c.is_exact_zero:
        return SlotVerdict.PASS
    if c.is_indistinguishable_zero:
        if c.valuation >= threshold:
            return SlotVerdict.PASS
        raise IndeterminateValuation(f"{c} can't settle |.| {'<' if strict else '<='} 1", at_least=c.valuation)
    return SlotVerdict.PASS if c.valuation >= threshold else SlotVerdict.FAIL


def integrality(x: WittVector, strict: bool = False) -> list[SlotVerdict]:
    """ Per-slot |lambda_m| <= 1, or |lambda_m| < 1 when strict """
    return [slot_integrality(c, strict) for c in x.components]


def phantom_bound(x: WittVector) -> list[NormValue]:
    """ max_{j <= m} |p|^j |lambda_j|^(p^(m-j)) for each phantom slot m, which dominates |phi_m| """
    p = x.prime
    bounds = []
    for m in range(x.length):
        terms = [NormValue.of(j) * norm_or_bound(x[j]) ** prime_power(p, m - j) for j in range(m + 1)]
        bounds.append(norm_max(*terms))
    return bounds
