""" Radius of convergence of the solutions of a rank-one operator at a Gauss point rho.

The radius is a liminf over all k of omega' |g_[k]|_rho^(-1/k) (omega' = omega for differential
operators, omega_q for q-difference operators), so a finite window of iterates only ever gives
estimates. A report is EXACT only when a closed form applies, and then it names its reason:

  - ByConstruction: the operator is trivial, its solutions are constants
  - SmallRadius: |g_[1]|_rho > 1/rho, where every iterate satisfies
    |g_[k]|_rho = |g_[1]|_rho^k and the radius is omega' / |g_[1]|_rho
  - SharpTest: at rho = 1, some |g_[s]|_1 < 1 proves the radius is strictly above omega'
"""
import logging
import math
import typing
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import islice

from amice_utils.amiceexceptions import PreconditionViolated
from amice_utils.config import DEFAULT_COEFFICIENT_BUDGET, DEFAULT_K_MAX, DEFAULT_S_MAX
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.numtheory import factorial_valuation
from amice_utils.padic.padic import PAdic, norm, norm_or_bound
from amice_utils.radius.iterates import first_iterate, iterate_windows
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.series.laurentwindow import gauss_norm
from amice_utils.series.qparam import QParam

logger = logging.getLogger(__name__)


class Provenance(Enum):
    SMALL_RADIUS = "SmallRadius"
    SHARP_TEST = "SharpTest"
    BY_CONSTRUCTION = "ByConstruction"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class RadiusCertificate:
    provenance: Provenance
    value: NormValue
    strict_lower_bound: bool = False
    witness: typing.Optional[int] = None

    def to_json(self) -> dict:
        return {
            "provenance": str(self.provenance),
            "value": self.value.to_json(),
            "strict_lower_bound": self.strict_lower_bound,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class SharpTestResult:
    """ ProvenGreaterThanOmega(witness) when some |g_[s]|_1 < 1, Inconclusive otherwise """
    s_max: int
    omega: NormValue
    witness: typing.Optional[int] = None
    norms: list = field(default_factory=list, compare=False)

    @property
    def proven(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        return {
            "verdict": "ProvenGreaterThanOmega" if self.proven else "Inconclusive",
            "witness": self.witness,
            "s_max": self.s_max,
            "omega": self.omega.to_json(),
            "norms": [n.to_json() for n in self.norms],
        }


@dataclass(frozen=True)
class RadiusReport:
    """ ``estimates[k - 1]`` is min(rho, omega' |g_[k]|_rho^(-1/k)). An estimate carrying the
    ``bound`` flag was computed from an upper bound on |g_[k]|_rho. """
    kind: OperatorKind
    rho: NormValue
    estimates: list[NormValue]
    running_min_tail: NormValue
    lower_bound: NormValue
    exact: typing.Optional[RadiusCertificate] = None
    truncated: bool = False

    @property
    def value(self) -> NormValue:
        """ The certified value when there is one, else the tail estimate """
        return self.exact.value if self.exact is not None else self.running_min_tail

    def to_json(self) -> dict:
        return {
            "kind": str(self.kind),
            "rho": self.rho.to_json(),
            "estimates": [e.to_json() for e in self.estimates],
            "running_min_tail": self.running_min_tail.to_json(),
            "lower_bound": self.lower_bound.to_json(),
            "exact": None if self.exact is None else self.exact.to_json(),
            "truncated": self.truncated,
        }


def omega_prime(op: OperatorSpec) -> NormValue:
    if op.kind is OperatorKind.QDIFF:
        return op.q.omega_q
    return NormValue.omega(op.prime)


def estimate(omega: NormValue, rho: NormValue, g_norm: NormValue, k: int) -> NormValue:
    """ min(rho, omega * |g_[k]|_rho^(-1/k)); rho when g_[k] vanishes """
    if g_norm.is_zero:
        return rho
    return min(rho, omega * g_norm ** Fraction(-1, k))


def small_radius(op: OperatorSpec, rho: NormValue = NormValue.one()) -> typing.Optional[NormValue]:
    """ omega' / |g_[1]|_rho when |g_[1]|_rho > 1/rho, i.e. |g|_rho > 1 (diff) or
    |a - 1|_rho > |q - 1| (qdiff), otherwise None """
    g1_norm = gauss_norm(first_iterate(op), rho)
    if g1_norm.bound or not g1_norm > rho.inverse():
        return None
    return omega_prime(op) / g1_norm


def lower_bound(op: OperatorSpec, rho: NormValue = NormValue.one()) -> NormValue:
    """ omega' / max(|g_[1]|_rho, 1/rho), which the radius never falls below """
    g1_norm = gauss_norm(first_iterate(op), rho)
    return omega_prime(op) / max(g1_norm.as_bound(False), rho.inverse())


def sharp_test(op: OperatorSpec, s_max: int = DEFAULT_S_MAX,
               budget: int = DEFAULT_COEFFICIENT_BUDGET) -> SharpTestResult:
    """ Scan s = 1..s_max for |g_[s]|_1 < 1, which proves the radius at rho = 1 exceeds omega'.
    Needs |g_[1]|_1 <= 1. """
    if s_max < 1:
        raise ValueError(f"s_max must be >= 1, got {s_max}")
    one = NormValue.one()
    norms = []
    for s, g_s in enumerate(islice(iterate_windows(op, budget), s_max), start=1):
        g_norm = gauss_norm(g_s)
        if s == 1 and g_norm > one:
            raise PreconditionViolated(f"Sharp test needs |g_[1]|_1 <= 1, got {g_norm}")
        norms.append(g_norm)
        if g_norm < one:
            logger.info(f"|g_[{s}]|_1 = {g_norm} < 1, radius exceeds omega'")
            return SharpTestResult(s_max, omega_prime(op), s, norms)
    return SharpTestResult(s_max, omega_prime(op), None, norms)


def ray_estimate(op: OperatorSpec, rho: NormValue = NormValue.one(), k_max: int = DEFAULT_K_MAX,
                 s_max: int = DEFAULT_S_MAX, budget: int = DEFAULT_COEFFICIENT_BUDGET) -> RadiusReport:
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if rho.is_zero:
        raise ValueError("rho must be positive")

    w = omega_prime(op)
    windows = list(islice(iterate_windows(op, budget), k_max))
    estimates = [estimate(w, rho, gauss_norm(g_k, rho), k) for k, g_k in enumerate(windows, start=1)]
    tail = [e for k, e in enumerate(estimates, start=1) if 2 * k >= k_max]
    truncated = any(g_k.truncated for g_k in windows)
    if truncated:
        logger.warning(f"Iterates were truncated, the estimates at rho = {rho} are tainted")

    exact = None
    if op.is_trivial:
        exact = RadiusCertificate(Provenance.BY_CONSTRUCTION, rho)
    elif (closed := small_radius(op, rho)) is not None:
        exact = RadiusCertificate(Provenance.SMALL_RADIUS, closed)
    elif rho == NormValue.one() and not gauss_norm(windows[0]) > NormValue.one():
        sharp = sharp_test(op, s_max, budget)
        if sharp.proven:
            exact = RadiusCertificate(Provenance.SHARP_TEST, w, strict_lower_bound=True, witness=sharp.witness)

    return RadiusReport(
        kind=op.kind,
        rho=rho,
        estimates=estimates,
        running_min_tail=min(tail),
        lower_bound=lower_bound(op, rho),
        exact=exact,
        truncated=truncated,
    )


def ray_table(op: OperatorSpec, rhos: typing.Iterable[NormValue], **kwargs) -> list[RadiusReport]:
    """ One report per rho; the calls are independent of each other """
    return [ray_estimate(op, rho, **kwargs) for rho in rhos]


def loglog_rows(reports: typing.Iterable[RadiusReport]) -> list[dict]:
    """ Rows of r = log_p(rho) against log_p(Ray / rho), exact in base-p logarithms """
    rows = []
    for report in reports:
        value = report.value
        r = -report.rho.exponent
        log_ratio = None if value.is_zero else report.rho.exponent - value.exponent
        rows.append({
            "rho_exponent": str(report.rho.exponent),
            "r": str(r),
            "log_ray_over_rho": str(log_ratio),
            "provenance": "Estimate" if report.exact is None else str(report.exact.provenance),
            "truncated": report.truncated,
        })
    return rows


def constant_qdiff_profile(lam: PAdic, q: QParam, n_max: int) -> list[NormValue]:
    """ For sigma_q - lambda, the values |S_n|^(1/n) / |q - 1| for n = 1..n_max with
    S_n = sum_j (-1)^j binom(n, j)_{1/q} q^(-j(j-1)/2) lambda^j, i.e. |g_[n]|_1^(1/n) """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    norm(lam - 1)

    p = q.prime
    guard = n_max * (math.ceil(q.q_minus_one_norm.exponent) + 2) + factorial_valuation(n_max, p) + 2
    work = q.q.cap + guard
    q_work = QParam(q.q.with_cap(work))
    q_inv = q_work.inverse()
    lam = lam.with_cap(work)
    scale = q.q_minus_one_norm

    profile = []
    for n in range(1, n_max + 1):
        total = PAdic.zero(p, work)
        for j in range(n + 1):
            term = q_inv.q_binomial(n, j) * q_inv.power(j * (j - 1) // 2) * lam ** j
            total = total + term if j % 2 == 0 else total - term
        s_norm = norm_or_bound(total)
        if s_norm.is_zero:
            profile.append(s_norm)
        else:
            profile.append(s_norm ** Fraction(1, n) / scale)
    return profile
