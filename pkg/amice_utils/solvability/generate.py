""" Operators built from a Witt family, and the Artin-Hasse type exponential behind them.

For a family {lambda_n} with phantom components phi_{n,m}:

  T d/dT - g:   g = a0 + sum n phi_{n,m} T^(n p^m)   (n over both signs)
  sigma_q - a:  a = q^a0 exp(phi_q^-) exp(phi_q^+),
                phi_q^+ = sum_{n > 0} phi_{n,m} (q^(n p^m) - 1) T^(n p^m) / p^m, likewise phi_q^-
"""
import logging
import typing

from amice_utils.amiceexceptions import OutOfConvergenceDomain
from amice_utils.config import DEFAULT_WITT_LENGTH
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.numtheory import coprime_decomposition, factorial_valuation, prime_power
from amice_utils.padic.padic import PAdic
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.series.laurentwindow import LaurentWindow
from amice_utils.series.powerseries import Direction, exp_series
from amice_utils.series.qparam import QParam, q_power
from amice_utils.solvability.wittfamily import WittFamily, column_length
from amice_utils.witt.wittvector import PhantomVector, ghost, unghost

logger = logging.getLogger(__name__)

# enough slots for any exponent a window can hold
_UNBOUNDED: int = 1 << 16


def _phantom_terms(family: WittFamily, sign: int, degree: int, wittlen: int, cap: int = None) -> typing.Iterator[
        tuple[int, int, PAdic]]:
    """ (n, m, phi_{n,m}) for the entries of the given sign with |n| p^m <= degree """
    p = family.prime
    for n, vector in family.entries.items():
        if n * sign < 0:
            continue
        length = column_length(n, degree, p, wittlen)
        if length == 0:
            continue
        if cap is not None:
            vector = vector.with_cap(cap)
        for m, phi in enumerate(ghost(vector, length)):
            yield n, m, phi


def artin_hasse(family: WittFamily, degree: int, direction: Direction = Direction.PLUS) -> LaurentWindow:
    """ exp(sum_n sum_m phi_{n,m} X^(|n| p^m) / p^m) up to X^degree, over the entries whose sign
    matches the direction (X = T for plus, X = 1/T for minus).

    >>> lam = WittFamily.from_rationals(2, {1: [1]})
    >>> [c.valuation for _, c in artin_hasse(lam, 3).items()]
    [0, 0, 0, 1]
    """
    if degree < 1:
        raise ValueError(f"artin_hasse needs degree >= 1, got {degree}")
    p = family.prime
    raw = {}
    for n, m, phi in _phantom_terms(family, direction.sign, degree, _UNBOUNDED):
        raw[direction.sign * abs(n) * prime_power(p, m)] = phi / prime_power(p, m)
    lo, hi = sorted((0, direction.sign * degree))
    exponent = LaurentWindow.build(p, raw, lo, hi)
    return exp_series(exponent, degree, direction)


def exp_decompose(b: typing.Mapping[int, PAdic], prime: int, degree: int = None,
                  wittlen: int = DEFAULT_WITT_LENGTH) -> WittFamily:
    """ The family with exp(sum_d b_d T^d / d) = E(sum lambda_n T^n), from phi_{n,m} = b_{n p^m} / n

    >>> fam = exp_decompose({1: PAdic.one(2)}, 2, degree=2)
    >>> [c.lift() for c in fam.entries[1]]
    [Fraction(1, 1), Fraction(-1, 2)]
    """
    if any(d < 1 for d in b):
        raise ValueError(f"exp_decompose needs degrees d >= 1, got {sorted(b)}")
    degree = max(b, default=0) if degree is None else degree
    columns: dict[int, dict[int, PAdic]] = {}
    for d, c in b.items():
        if d > degree:
            continue
        n, m = coprime_decomposition(d, prime)
        columns.setdefault(n, {})[m] = c / n

    entries = {}
    for n, slots in sorted(columns.items()):
        length = column_length(n, degree, prime, wittlen)
        if length == 0:
            continue
        phantom = PhantomVector(prime, tuple(slots.get(m, PAdic.zero(prime)) for m in range(length)))
        entries[n] = unghost(phantom)
    return WittFamily(prime, entries, PAdic.zero(prime), 0, degree, wittlen)


def _qdiff_exponent(family: WittFamily, q: QParam, sign: int, degree: int, cap: int) -> LaurentWindow:
    p = family.prime
    raw = {}
    for n, m, phi in _phantom_terms(family, sign, degree, family.wittlen, cap):
        i = n * prime_power(p, m)
        raw[i] = phi * (q.power(i) - 1) / prime_power(p, m)
    lo, hi = sorted((0, sign * degree))
    return LaurentWindow.build(p, raw, lo, hi)


def generate(family: WittFamily, kind: typing.Union[OperatorKind, str], q: QParam = None,
             i_min: int = None, i_max: int = None) -> OperatorSpec:
    """ The operator with Witt family ``family`` on the window [i_min, i_max]

    >>> fam = WittFamily.from_rationals(2, {1: [1]}, i_max=8)
    >>> generate(fam, "diff").g.support
    [1, 2, 4, 8]
    """
    if isinstance(kind, str):
        kind = OperatorKind.from_string(kind)
    p = family.prime
    i_min = family.i_min if i_min is None else i_min
    i_max = family.i_max if i_max is None else i_max
    family = family.with_window(min(i_min, 0), max(i_max, 0))

    match kind:
        case OperatorKind.DIFF:
            raw = {0: family.a0}
            for sign, degree in ((1, family.i_max), (-1, -family.i_min)):
                for n, m, phi in _phantom_terms(family, sign, degree, family.wittlen):
                    raw[n * prime_power(p, m)] = n * phi
            g = LaurentWindow.build(p, raw, family.i_min, family.i_max)
            logger.info(f"Generated g with support {g.support}")
            return OperatorSpec.diff(g)
        case OperatorKind.QDIFF:
            if q is None:
                raise ValueError("A q-difference operator needs q")
            if not q.q_minus_one_norm < NormValue.omega(p):
                raise OutOfConvergenceDomain(f"exp(phi_q) needs |q - 1| < omega, got {q.q_minus_one_norm}")
            d_minus, d_plus = -family.i_min, family.i_max
            cap = q.q.cap
            work = cap + factorial_valuation(max(d_minus, d_plus, 1), p) + 2
            qw = QParam(q.q.with_cap(work))

            a_minus = exp_series(_qdiff_exponent(family, qw, -1, d_minus, work), d_minus, Direction.MINUS)
            a_plus = exp_series(_qdiff_exponent(family, qw, 1, d_plus, work), d_plus, Direction.PLUS)
            scalar = q_power(qw, family.a0.with_cap(work))
            a = (a_minus * a_plus).scale(scalar).with_cap(cap)
            logger.info(f"Generated a with support {a.support}")
            return OperatorSpec.qdiff(a, q)
        case _:
            raise ValueError(f"Unknown operator kind {kind}")
