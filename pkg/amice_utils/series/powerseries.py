""" Truncated power series in X = T (direction "plus") or X = 1/T (direction "minus"), carried
in LaurentWindows. exp and log use the differential-equation recurrences
E' = f'E and u L' = u', so a degree-D expansion costs O(D^2) coefficient operations. """
import logging
import typing
from enum import Enum

from amice_utils.padic.numtheory import factorial_valuation, integer_log
from amice_utils.padic.padic import PAdic
from amice_utils.series.laurentwindow import LaurentWindow

logger = logging.getLogger(__name__)


class Direction(Enum):
    PLUS = "plus"
    MINUS = "minus"

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"{type(self).__name__}.{self.name}"

    @property
    def sign(self) -> int:
        return 1 if self is Direction.PLUS else -1

    @classmethod
    def from_string(cls, direction: str):
        match direction:
            case "plus" | "+":
                return cls(Direction.PLUS)
            case "minus" | "-":
                return cls(Direction.MINUS)
            case _:
                raise ValueError(f"Can't match {direction=}")


def _coefficient_list(f: LaurentWindow, degree: int, direction: Direction, cap: int = None) -> list[PAdic]:
    wrong_side = [i for i in f.support if i * direction.sign < 0]
    if wrong_side:
        raise ValueError(f"Series has exponents {wrong_side} outside the {direction} direction")
    cs = [f.coefficient(direction.sign * k) for k in range(degree + 1)]
    if cap is not None:
        cs = [c.with_cap(cap) for c in cs]
    return cs


def _from_list(prime: int, cs: list[PAdic], direction: Direction, truncated: bool = False,
               cap: int = None) -> LaurentWindow:
    degree = len(cs) - 1
    raw = {direction.sign * k: (c if cap is None else c.with_cap(cap)) for k, c in enumerate(cs)}
    lo, hi = sorted((0, direction.sign * degree))
    return LaurentWindow.build(prime, raw, lo, hi, truncated=truncated)


def working_cap(f: LaurentWindow, degree: int) -> int:
    """ Digits to carry through a degree-D recurrence that divides by 1..D """
    return f.cap + factorial_valuation(degree, f.prime) + 2


def exp_series(f: LaurentWindow, degree: int, direction: Direction = Direction.PLUS) -> LaurentWindow:
    """ exp(f) truncated at X^degree, for f with zero constant term """
    if not f.coefficient(0).is_zero:
        raise ValueError("exp_series needs a series without constant term")
    cap = f.cap
    work = working_cap(f, degree)
    fs = _coefficient_list(f, degree, direction, work)
    weighted = [k * fs[k] for k in range(degree + 1)]
    es = [PAdic.one(f.prime, work)]
    for n in range(1, degree + 1):
        acc = PAdic.zero(f.prime, work)
        for k in range(1, n + 1):
            if not weighted[k].is_exact_zero:
                acc = acc + weighted[k] * es[n - k]
        es.append(acc / n)
    return _from_list(f.prime, es, direction, f.truncated, cap)


def log_series(u: LaurentWindow, degree: int, direction: Direction = Direction.PLUS) -> LaurentWindow:
    """ log(u) truncated at X^degree, for u with constant term 1 """
    if not u.coefficient(0).agrees(PAdic.one(u.prime)):
        raise ValueError("log_series needs a series with constant term 1")
    us = _coefficient_list(u, degree, direction)
    ls = [PAdic.zero(u.prime, u.cap)]
    for n in range(1, degree + 1):
        acc = n * us[n]
        for k in range(1, n):
            if not ls[k].is_exact_zero and not us[n - k].is_exact_zero:
                acc = acc - k * ls[k] * us[n - k]
        ls.append(acc / n)
    return _from_list(u.prime, ls, direction, u.truncated)


def inverse_series(u: LaurentWindow, degree: int, direction: Direction = Direction.PLUS) -> LaurentWindow:
    """ 1/u truncated at X^degree, for u with a unit constant term """
    us = _coefficient_list(u, degree, direction)
    w0 = us[0].inverse()
    ws = [w0]
    for n in range(1, degree + 1):
        acc = PAdic.zero(u.prime, u.cap)
        for k in range(1, n + 1):
            if not us[k].is_exact_zero:
                acc = acc + us[k] * ws[n - k]
        ws.append(-(w0 * acc))
    return _from_list(u.prime, ws, direction, u.truncated)


def log_scalar(x: PAdic) -> PAdic:
    """ log(x) = sum_k (-1)^(k+1) (x - 1)^k / k for |x - 1| < 1

    Term k has valuation at least k e - l(k) with e = v_p(x - 1), so the sum stops once that
    clears the absolute precision e + cap of the result.
    """
    h = x - 1
    if h.is_exact_zero:
        return PAdic.zero(x.prime, x.cap)
    if h.is_indistinguishable_zero or h.valuation < 1:
        raise ValueError(f"log_scalar needs |x - 1| < 1, got x = {x}")
    p, e = x.prime, h.valuation
    target = e + x.cap
    work = h.with_cap(x.cap + factorial_valuation(target, p) + 2)
    total = PAdic.zero(p, work.cap)
    power = PAdic.one(p, work.cap)
    k = 0
    while True:
        k += 1
        if k * e - integer_log(k, p) >= target:
            break
        power = power * work
        term = power / k
        total = total + term if k % 2 else total - term
    return total.with_absolute_precision(target)


def is_integral(f: LaurentWindow) -> bool:
    """ Every coefficient is known to have norm <= 1 (valuation >= 0) """
    return all(c.valuation >= 0 for c in f.coeffs.values()) and all(a >= 0 for a in f.unresolved.values())


def first_non_integral(f: LaurentWindow) -> typing.Optional[int]:
    for i, c in f.coeffs.items():
        if c.valuation < 0:
            return i
    return None
