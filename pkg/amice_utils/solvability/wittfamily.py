import logging
import typing
from dataclasses import dataclass, field

from amice_utils.amiceexceptions import ParseError
from amice_utils.config import DEFAULT_PRECISION, DEFAULT_WITT_LENGTH
from amice_utils.padic.numtheory import prime_power
from amice_utils.padic.padic import PAdic
from amice_utils.witt.wittvector import PhantomVector, WittVector, ghost

logger = logging.getLogger(__name__)


def column_length(n: int, bound: int, p: int, wittlen: int) -> int:
    """ How many slots m < wittlen have |n| p^m <= bound

    >>> column_length(3, 24, 2, 8)
    4
    """
    count = 0
    while count < wittlen and abs(n) * prime_power(p, count) <= bound:
        count += 1
    return count


@dataclass(frozen=True)
class WittFamily:
    """ Witt vectors lambda_n for signed indices n coprime to p, together with the constant a0.

    ``i_min``/``i_max`` are the exponent window the family describes: slot m of lambda_n sits at
    exponent n p^m, so it is represented when |n| p^m fits the window on its side. Missing
    entries are zero vectors.
    """
    prime: int
    entries: dict = field(default_factory=dict)
    a0: typing.Optional[PAdic] = None
    i_min: int = 0
    i_max: int = 0
    wittlen: int = DEFAULT_WITT_LENGTH

    def __post_init__(self):
        if self.a0 is None:
            object.__setattr__(self, "a0", PAdic.zero(self.prime))
        object.__setattr__(self, "entries", dict(sorted(self.entries.items())))
        for n, vector in self.entries.items():
            if n == 0 or n % self.prime == 0:
                raise ValueError(f"Family index {n} isn't a nonzero integer coprime to {self.prime}")
            if vector.prime != self.prime:
                raise ValueError(f"Witt vector at {n} isn't {self.prime}-typical")
        if self.i_min > 0 or self.i_max < 0:
            raise ValueError(f"Family window [{self.i_min}, {self.i_max}] must contain 0")

    @classmethod
    def from_rationals(cls, prime: int, entries: typing.Mapping[int, typing.Iterable], a0=0,
                       i_min: int = 0, i_max: int = 0, wittlen: int = DEFAULT_WITT_LENGTH,
                       prec: int = DEFAULT_PRECISION):
        vectors = {n: WittVector.from_rationals(prime, values, prec) for n, values in entries.items()}
        return cls(prime, vectors, PAdic.from_rational(a0, prime, prec), i_min, i_max, wittlen)

    @property
    def positive(self) -> dict[int, WittVector]:
        return {n: v for n, v in self.entries.items() if n > 0}

    @property
    def negative(self) -> dict[int, WittVector]:
        return {n: v for n, v in self.entries.items() if n < 0}

    def bound(self, n: int) -> int:
        """ The window bound on the side of n """
        return self.i_max if n > 0 else -self.i_min

    def slots(self, n: int) -> int:
        """ Number of represented slots of lambda_n """
        return column_length(n, self.bound(n), self.prime, self.wittlen)

    def slot(self, n: int, m: int) -> PAdic:
        """ lambda_{n,m}, zero when not stored """
        vector = self.entries.get(n)
        if vector is None or m >= vector.length:
            return PAdic.zero(self.prime)
        return vector[m]

    def phantom(self, n: int, length: int = None) -> PhantomVector:
        """ Ghost components of lambda_n, padded with zero Witt components up to ``length`` """
        length = self.slots(n) if length is None else length
        vector = self.entries.get(n)
        if vector is None:
            return PhantomVector(self.prime, tuple(PAdic.zero(self.prime) for _ in range(length)))
        return ghost(vector, length)

    def with_window(self, i_min: int, i_max: int) -> "WittFamily":
        return WittFamily(self.prime, self.entries, self.a0, i_min, i_max, self.wittlen)

    def agrees(self, other: "WittFamily") -> bool:
        """ Same a0 and the same represented slots, as far as the known digits go """
        if self.prime != other.prime or not self.a0.agrees(other.a0):
            return False
        for n in set(self.entries) | set(other.entries):
            slots = max(self.slots(n), other.slots(n))
            if not all(self.slot(n, m).agrees(other.slot(n, m)) for m in range(slots)):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "a0": self.a0.to_json(),
            "entries": [{"n": n, "witt": v.to_json()} for n, v in self.entries.items()],
            "i_min": self.i_min,
            "i_max": self.i_max,
            "wittlen": self.wittlen,
        }

    @classmethod
    def from_json(cls, obj: dict, prime: int = None, prec: int = DEFAULT_PRECISION,
                  wittlen: int = DEFAULT_WITT_LENGTH):
        try:
            p = int(obj.get("prime", prime))
            entries = {}
            for entry in obj.get("entries", []):
                n = int(entry["n"])
                if n in entries:
                    raise ParseError(f"Family index {n} appears twice")
                entries[n] = WittVector.from_json(entry["witt"], p, prec)
            a0 = PAdic.from_json(obj.get("a0", 0), p, prec)
            lo, hi = family_window(entries, p)
            i_min = int(obj.get("i_min", lo))
            i_max = int(obj.get("i_max", hi))
            length = int(obj.get("wittlen", max([wittlen] + [v.length for v in entries.values()])))
            return cls(p, entries, a0, i_min, i_max, length)
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Bad Witt family: {e}")

    def __str__(self):
        parts = [f"a0 = {self.a0}"] + [f"lambda_{n} = {v}" for n, v in self.entries.items()]
        return "; ".join(parts)


def family_window(entries: typing.Mapping[int, WittVector], p: int) -> tuple[int, int]:
    """ The smallest window holding every slot of every entry """
    lo = min([0] + [n * prime_power(p, v.length - 1) for n, v in entries.items() if n < 0])
    hi = max([0] + [n * prime_power(p, v.length - 1) for n, v in entries.items() if n > 0])
    return lo, hi

