""" Reading the Witt family of an operator off its coefficients.

Every positive integer is n p^m in exactly one way with (n, p) = 1, so each coefficient of the
operator's series lands in exactly one phantom slot:

  - T d/dT - g:   phi_{n,m} = a_{n p^m} / n  and  phi_{-n,m} = -a_{-n p^m} / n
  - sigma_q - a:  a = lambda a^- a^+ by Motzkin, then with c = coefficients of log(a^+), log(a^-)
                  phi_{n,m} = c_{n p^m} p^m / (q^{n p^m} - 1), likewise for -n,
                  and a0 = log(lambda) / log(q)

Each phantom column is unghosted into lambda_n.
"""
import logging
import typing
from dataclasses import dataclass, field

from amice_utils.amiceexceptions import ExponentSolveFailed, LogDomain, OutOfConvergenceDomain
from amice_utils.config import DEFAULT_WITT_LENGTH
from amice_utils.motzkin.motzkin import MotzkinFactors, decompose
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.numtheory import coprime_decomposition, prime_power
from amice_utils.padic.padic import PAdic
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.series.laurentwindow import LaurentWindow, gauss_norm
from amice_utils.series.powerseries import Direction, log_scalar, log_series
from amice_utils.series.qparam import QParam, q_power
from amice_utils.solvability.wittfamily import WittFamily, column_length
from amice_utils.witt.wittvector import PhantomVector, unghost

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Extraction:
    """ A WittFamily plus what the extraction noticed on the way """
    family: WittFamily
    overflow: list = field(default_factory=list)
    residual: list = field(default_factory=list)
    motzkin: typing.Optional[MotzkinFactors] = None
    log_domain: bool = True

    def to_json(self) -> dict:
        result = {
            "family": self.family.to_json(),
            "overflow": self.overflow,
            "residual": self.residual,
            "log_domain": self.log_domain,
        }
        if self.motzkin is not None:
            result["motzkin"] = self.motzkin.to_json()
        return result


def slot_of(i: int, p: int) -> tuple[int, int]:
    """ The signed family index n and slot m of exponent i = sign * n p^m

    >>> slot_of(-12, 2)
    (-3, 2)
    """
    n, m = coprime_decomposition(abs(i), p)
    return (n if i > 0 else -n), m


def _columns(coefficients: typing.Iterable[tuple[int, PAdic]], p: int, wittlen: int) -> tuple[dict[int, dict[int, PAdic]], list[int]]:
    """ Sort phantom values into columns n -> {m: phi_{n,m}}; exponents whose slot is at or
    beyond wittlen are returned as overflow """
    columns: dict[int, dict[int, PAdic]] = {}
    overflow = []
    for i, phi in coefficients:
        n, m = slot_of(i, p)
        if m >= wittlen:
            overflow.append(i)
            continue
        columns.setdefault(n, {})[m] = phi
    return columns, overflow


def _unghost_columns(columns: dict[int, dict[int, PAdic]], p: int, i_min: int, i_max: int,
                     wittlen: int) -> dict:
    entries = {}
    for n, slots in sorted(columns.items()):
        bound = i_max if n > 0 else -i_min
        length = column_length(n, bound, p, wittlen)
        phantom = PhantomVector(p, tuple(slots.get(m, PAdic.zero(p)) for m in range(length)))
        entries[n] = unghost(phantom)
    return entries


def _diff_phantoms(g: LaurentWindow) -> list[tuple[int, PAdic]]:
    phantoms = []
    for i, c in g.items():
        if i == 0:
            continue
        n, _ = slot_of(i, g.prime)
        phantoms.append((i, c / n if i > 0 else -c / abs(n)))
    return phantoms


def _log_factor(factor: LaurentWindow, degree: int, direction: Direction, strict: bool) -> tuple[LaurentWindow, bool]:
    """ log of a^+ (or a^-) to the given degree; in the log domain when |factor - 1|_1 < omega """
    in_domain = gauss_norm(factor - 1) < NormValue.omega(factor.prime)
    if not in_domain:
        message = f"|a^{'+' if direction is Direction.PLUS else '-'} - 1|_1 isn't below omega"
        if strict:
            raise LogDomain(message)
        logger.warning(f"{message}, taking the logarithm formally")
    lo, hi = (0, degree) if direction is Direction.PLUS else (-degree, 0)
    return log_series(factor.truncate(lo, hi), degree, direction), in_domain


def solve_exponent(lam: PAdic, q: QParam) -> PAdic:
    """ a0 with q^a0 = lambda, as log(lambda) / log(q) """
    p = q.prime
    if lam.is_zero:
        raise ExponentSolveFailed(f"lambda = {lam} isn't a unit")
    h = lam - 1
    if h.is_indistinguishable_zero:
        if h.valuation < 1:
            raise ExponentSolveFailed(f"Can't place lambda = {lam} in the unit disc around 1")
        return PAdic.indistinguishable(p, h.valuation - q.q_minus_one.valuation)
    if not h.is_exact_zero and h.valuation < 1:
        raise ExponentSolveFailed(f"|lambda - 1| = |{h}| isn't < 1, so lambda isn't q^a0 for a0 in Z_p")
    a0 = log_scalar(lam) / log_scalar(q.q)
    if a0.is_zero or a0.valuation >= 0:
        try:
            reproduced = q_power(q, a0)
        except OutOfConvergenceDomain as e:
            raise ExponentSolveFailed(f"Can't verify q^a0: {e}")
        if not reproduced.agrees(lam):
            raise ExponentSolveFailed(f"q^a0 = {reproduced} doesn't reproduce lambda = {lam}")
    return a0


def extract(op: OperatorSpec, wittlen: int = DEFAULT_WITT_LENGTH, strict_log: bool = True) -> Extraction:
    p = op.prime
    series = op.series
    i_min, i_max = min(series.i_min, 0), max(series.i_max, 0)

    match op.kind:
        case OperatorKind.DIFF:
            phantoms = _diff_phantoms(series)
            a0 = series.coefficient(0)
            factors = None
            in_domain = True
        case OperatorKind.QDIFF:
            q = op.q
            q.require_small()
            factors = decompose(series)
            log_plus, plus_ok = _log_factor(factors.a_plus, i_max, Direction.PLUS, strict_log)
            log_minus, minus_ok = _log_factor(factors.a_minus, -i_min, Direction.MINUS, strict_log)
            in_domain = plus_ok and minus_ok
            phantoms = []
            for i, c in list(log_minus.items()) + list(log_plus.items()):
                if i == 0:
                    continue
                _, m = slot_of(i, p)
                phantoms.append((i, c * prime_power(p, m) / (q.power(i) - 1)))
            a0 = solve_exponent(factors.lam, q)
        case _:
            raise ValueError(f"Unknown operator kind {op.kind}")

    columns, overflow = _columns(phantoms, p, wittlen)
    if overflow:
        logger.warning(f"Exponents {overflow} need Witt slots beyond length {wittlen}")
    entries = _unghost_columns(columns, p, i_min, i_max, wittlen)
    family = WittFamily(p, entries, a0, i_min, i_max, wittlen)

    consumed = {0} | set(overflow) | {i for i, _ in phantoms}
    residual = [i for i, _ in series.items() if op.kind is OperatorKind.DIFF and i not in consumed]
    logger.info(f"Extracted {len(entries)} Witt columns from {op.kind} operator")
    return Extraction(family, sorted(overflow), residual, factors, in_domain)


def witt_extract(op: OperatorSpec, wittlen: int = DEFAULT_WITT_LENGTH, strict_log: bool = True) -> WittFamily:
    return extract(op, wittlen, strict_log).family
