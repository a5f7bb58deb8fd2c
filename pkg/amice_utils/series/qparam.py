import functools
import logging
import math
import typing
from dataclasses import dataclass
from fractions import Fraction

from amice_utils.amiceexceptions import IndeterminateValuation, OutOfConvergenceDomain, QParamError
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.padic import PAdic, norm

logger = logging.getLogger(__name__)

KAPPA_SEARCH_CAP: int = 4096


@functools.lru_cache(maxsize=4096)
def _power(q: PAdic, i: int) -> PAdic:
    return q ** i


@functools.lru_cache(maxsize=4096)
def _bracket(q: PAdic, n: int) -> PAdic:
    if n < 0:
        return -(_power(q, n) * _bracket(q, -n))
    value = PAdic.zero(q.prime, q.cap)
    for k in range(n):
        value = value + _power(q, k)
    return value


@functools.lru_cache(maxsize=256)
def _kappa(q: PAdic) -> int:
    w = NormValue.omega(q.prime)
    for k in range(1, KAPPA_SEARCH_CAP + 1):
        if norm(_power(q, k) - 1) < w:
            return k
    raise QParamError(f"No kappa <= {KAPPA_SEARCH_CAP} with |q^kappa - 1| < omega")


@dataclass(frozen=True)
class QParam:
    """ The parameter q of a q-difference operator, with |q - 1| < 1 and q != 1.

    Powers q^i, q-integers [i]_q and kappa are memoised per value of q, outside the instance.
    [n]_q is built as the geometric sum 1 + q + ... + q^(n-1), so no digits are lost dividing
    by q - 1.
    """
    q: PAdic

    def __post_init__(self):
        try:
            distance = norm(self.q - 1)
        except IndeterminateValuation:
            raise QParamError(f"Can't tell |q - 1| for q = {self.q}")
        if distance.is_zero:
            raise QParamError("q = 1 is the differential case, not a q-difference operator")
        if not distance < NormValue.one():
            raise QParamError(f"Need |q - 1| < 1, got |q - 1| = {distance}")

    @classmethod
    def from_rational(cls, value, prime: int, prec: int):
        return cls(PAdic.from_rational(value, prime, prec))

    @property
    def prime(self) -> int:
        return self.q.prime

    @property
    def q_minus_one(self) -> PAdic:
        return self.q - 1

    @property
    def q_minus_one_norm(self) -> NormValue:
        return norm(self.q_minus_one)

    def power(self, i: int) -> PAdic:
        return _power(self.q, i)

    def bracket(self, n: int) -> PAdic:
        """ [n]_q = (q^n - 1)/(q - 1) """
        return _bracket(self.q, n)

    def q_factorial(self, n: int) -> PAdic:
        """ [n]_q! = [1]_q [2]_q ... [n]_q """
        result = PAdic.one(self.prime, self.q.cap)
        for i in range(1, n + 1):
            result = result * self.bracket(i)
        return result

    def q_binomial(self, n: int, j: int) -> PAdic:
        if not 0 <= j <= n:
            return PAdic.zero(self.prime, self.q.cap)
        return self.q_factorial(n) / (self.q_factorial(j) * self.q_factorial(n - j))

    @property
    def kappa(self) -> int:
        """ The smallest k >= 1 with |q^k - 1| < omega """
        return _kappa(self.q)

    @property
    def omega_q(self) -> NormValue:
        """ omega if kappa = 1, else (|[kappa]_q| omega)^(1/kappa) """
        w = NormValue.omega(self.prime)
        if self.kappa == 1:
            return w
        return (norm(self.bracket(self.kappa)) * w) ** Fraction(1, self.kappa)

    def require_small(self):
        """ Routines that need |q - 1| < omega call this first """
        if not self.q_minus_one_norm < NormValue.omega(self.prime):
            raise QParamError(f"Need |q - 1| < omega, got {self.q_minus_one_norm}")

    def inverse(self) -> "QParam":
        return QParam(self.q.inverse())

    def to_json(self) -> dict:
        return {
            "q": self.q.to_json(),
            "q_minus_one_norm": self.q_minus_one_norm.to_json(),
            "kappa": self.kappa,
            "omega_q": self.omega_q.to_json(),
        }


def binomial_series_terms(q: QParam, alpha: PAdic) -> int:
    """ Number of terms of sum C(alpha, k)(q - 1)^k needed to push the tail below |p|^cap.

    Term k is at most omega * r^k with r = max(|alpha|, 1) |q - 1| / omega, because
    |k!| >= omega^(k-1).
    """
    p = q.prime
    alpha_exponent = 0 if alpha.is_zero else min(0, alpha.valuation)
    r_exponent = q.q_minus_one_norm.exponent - Fraction(1, p - 1) + alpha_exponent
    if r_exponent <= 0:
        raise OutOfConvergenceDomain(
            f"q^alpha needs |q - 1| < omega / max(|alpha|, 1); got |q - 1| = {q.q_minus_one_norm}, alpha = {alpha}")
    return max(1, math.ceil((q.q.cap - Fraction(1, p - 1)) / r_exponent)) + 1


def q_power(q: QParam, alpha: PAdic, terms: int = None) -> PAdic:
    """ q^alpha by the binomial series, or q^n directly when alpha is an exact integer """
    n = alpha.to_int()
    if n is not None:
        return q.power(n)
    needed = binomial_series_terms(q, alpha)
    if terms is None:
        terms = needed
    elif terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    elif terms < needed:
        logger.debug(f"q_power with {terms} terms, {needed} certify the working precision")

    h = q.q_minus_one
    term = PAdic.one(q.prime, q.q.cap)
    total = term
    for k in range(1, terms):
        term = term * (alpha - (k - 1)) * h / k
        total = total + term
    return total


def omega(p: int) -> NormValue:
    return NormValue.omega(p)


def q_numerics(kind: str, q: QParam = None, n: int = None, j: int = None, alpha: PAdic = None,
               terms: int = None, prime: int = None) -> typing.Union[PAdic, NormValue, int]:
    match kind:
        case "q_factorial":
            return q.q_factorial(n)
        case "q_binomial":
            return q.q_binomial(n, j)
        case "q_power":
            return q_power(q, alpha, terms)
        case "omega":
            return omega(prime if q is None else q.prime)
        case "omega_q":
            return q.omega_q
        case "kappa":
            return q.kappa
        case _:
            raise ValueError(f"Unknown q-numeric {kind}")
