import logging
import typing
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from amice_utils.amiceexceptions import HypothesisViolated, ParseError
from amice_utils.padic.normvalue import NormValue

logger = logging.getLogger(__name__)


class LemmaKind(Enum):
    """ The numerical statements checked by brute force. The values are the CLI names. """
    POWER_PEAK = "L3_0_9"  # rho^(p^j) / |p^j| dominates rho^r / |r|
    FACTORIAL_RATIO = "L3_0_10"  # |k! / n!|^(1/(k-n)) >= |p|^(l(n)+1)
    Q_POWER_LIMIT = "L3_0_12"  # (q^alpha - 1)/(q - 1) -> alpha
    Q_POWER_NORM = "L3_0_13"  # |q^d - 1| = |p^(m-i)| |q - 1|^(p^i)
    Q_DERIVATIVE = "L5_1_2"  # |d_q^k f / [k]_q!|_rho <= rho^(-k) |f|_rho
    ULTRAMETRIC_PRODUCT = "L5_3_3"  # |h- + h+ + h- h+| = max(|h-|, |h+|)
    LEGENDRE = "legendre"  # digit sum and Legendre factorial valuations agree

    def __str__(self):
        return str(self.value)

    @classmethod
    def from_string(cls, which: str):
        try:
            return cls(which)
        except ValueError:
            raise ParseError(f"Unknown lemma {which!r}, expected one of {[str(k) for k in cls]}")


def default_rho(p: int, j: int) -> NormValue:
    """ A rho where the power peak bound applies: |p| omega for j = 0, otherwise the midpoint (in
    exponents) of omega^(1/p^(j-1)) < rho < omega^(1/p^j) """
    w = Fraction(1, p - 1)
    if j == 0:
        return NormValue.of(w + 1)
    return NormValue.of((w / p ** (j - 1) + w / p ** j) / 2)


def default_q_exponents(p: int) -> tuple[int, ...]:
    """ Three placements |q - 1| = |p|^e with |q - 1| < omega """
    first = int(Fraction(1, p - 1)) + 1
    return first, first + 1, first + 2


@dataclass(frozen=True)
class LemmaRange:
    """ The finite ranges a lemma suite sweeps. Every field is written into the report. """
    which: LemmaKind
    prime: int = 2
    j: int = 0
    rho: typing.Optional[NormValue] = None
    r_max: int = 1000
    n_min: int = 1
    n_max: int = 100
    k_max: int = 1000
    m_max: int = 6
    alpha: Fraction = Fraction(1, 3)
    alpha_max: int = 10
    q_exponents: tuple = field(default_factory=tuple)
    samples: int = 50
    window: int = 4
    seed: int = 0
    prec: int = 32

    def __post_init__(self):
        if self.rho is None:
            rho = NormValue.one() if self.which is LemmaKind.Q_DERIVATIVE else default_rho(self.prime, self.j)
            object.__setattr__(self, "rho", rho)
        if not self.q_exponents:
            if self.which is LemmaKind.Q_POWER_LIMIT:
                exponents = tuple(range(2, 9))
            else:
                exponents = default_q_exponents(self.prime)
            object.__setattr__(self, "q_exponents", exponents)
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        for name in ("r_max", "n_min", "n_max", "k_max", "samples", "alpha_max"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.j < 0 or self.m_max < 0 or self.window < 0:
            raise ValueError("j, m_max and window can't be negative")
        if self.n_min > self.n_max:
            raise ValueError(f"Empty range n = {self.n_min}..{self.n_max}")
        if self.rho.is_zero:
            raise HypothesisViolated("rho must be positive")

    def to_json(self) -> dict:
        return {
            "which": str(self.which),
            "prime": self.prime,
            "j": self.j,
            "rho": self.rho.to_json(),
            "r_max": self.r_max,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "k_max": self.k_max,
            "m_max": self.m_max,
            "alpha": str(self.alpha),
            "alpha_max": self.alpha_max,
            "q_exponents": list(self.q_exponents),
            "samples": self.samples,
            "window": self.window,
            "seed": self.seed,
            "prec": self.prec,
        }


class CaseVerdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDECIDED = "undecided"

    def __str__(self):
        return str(self.value)


def _exponent(value: NormValue) -> typing.Optional[str]:
    return None if value.is_zero else str(value.exponent)


@dataclass(frozen=True)
class LemmaCase:
    """ One checked instance: lhs <= rhs (or lhs < rhs, or lhs = rhs) between two norms """
    case: dict
    lhs: NormValue
    rhs: NormValue
    verdict: CaseVerdict

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "lhs_exponent": _exponent(self.lhs),
            "rhs_exponent": _exponent(self.rhs),
            "verdict": str(self.verdict),
        }

    def row(self) -> dict:
        row = {k: str(v) for k, v in self.case.items()}
        row.update(lhs_exponent=_exponent(self.lhs), rhs_exponent=_exponent(self.rhs), verdict=str(self.verdict))
        return row


@dataclass(frozen=True)
class LemmaReport:
    lemma_range: LemmaRange
    cases: list[LemmaCase]

    @property
    def counterexamples(self) -> list[LemmaCase]:
        return [c for c in self.cases if c.verdict is CaseVerdict.FAILS]

    @property
    def undecided(self) -> list[LemmaCase]:
        return [c for c in self.cases if c.verdict is CaseVerdict.UNDECIDED]

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_json(self, include_cases: bool = True) -> dict:
        result = {
            "range": self.lemma_range.to_json(),
            "checked": len(self.cases),
            "counterexamples": [c.to_json() for c in self.counterexamples],
            "undecided": len(self.undecided),
        }
        if include_cases:
            result["cases"] = [c.to_json() for c in self.cases]
        return result
