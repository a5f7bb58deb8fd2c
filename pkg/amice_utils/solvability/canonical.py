import logging
from dataclasses import dataclass

from amice_utils.amiceexceptions import NotSolvable
from amice_utils.config import DEFAULT_DECAY_CUT, DEFAULT_WITT_LENGTH
from amice_utils.padic.normvalue import NormValue
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.series.laurentwindow import LaurentWindow, tripartite
from amice_utils.series.operators import SeriesOperator, apply
from amice_utils.series.powerseries import Direction
from amice_utils.series.qparam import QParam
from amice_utils.solvability.criterion import SolvabilityReport, Verdict, check
from amice_utils.solvability.extract import witt_extract
from amice_utils.solvability.generate import artin_hasse, generate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CanonicalForm:
    """ The operator in the basis where its coefficient loses the positive part, with the gauge
    h that moves it there. ``verified`` records that h solves the positive part to window depth:
    theta(h) = g^+ h for T d/dT - g, sigma_q(h) = a^+ h for sigma_q - a. """
    operator: OperatorSpec
    gauge: LaurentWindow
    verified: bool
    report: SolvabilityReport

    def to_json(self) -> dict:
        return {
            "operator": self.operator.to_json(),
            "gauge": self.gauge.to_json(),
            "verified": self.verified,
            "verdict": str(self.report.verdict),
        }


def _require_pass(op: OperatorSpec, wittlen: int, decay_cut: NormValue) -> SolvabilityReport:
    report = check(op, wittlen, decay_cut)
    if report.verdict is not Verdict.PASS:
        why = report.witness if report.witness is not None else report.reason
        raise NotSolvable(f"Operator isn't solvable on its window: {report.verdict} ({why})")
    return report


def _gauge(report: SolvabilityReport, degree: int) -> LaurentWindow:
    if degree < 1:
        return LaurentWindow.constant(report.family.prime, 1)
    return artin_hasse(report.family, degree, Direction.PLUS)


def canonical_form(op: OperatorSpec, wittlen: int = DEFAULT_WITT_LENGTH,
                   decay_cut: NormValue = NormValue.of(DEFAULT_DECAY_CUT)) -> CanonicalForm:
    """ T d/dT - (a0 + g^-) or sigma_q - q^a0 a^- for a solvable operator """
    report = _require_pass(op, wittlen, decay_cut)
    degree = max(op.series.i_max, 0)
    h = _gauge(report, degree)

    match op.kind:
        case OperatorKind.DIFF:
            g_minus, a0, g_plus = tripartite(op.g)
            canonical = (g_minus + a0).with_bounds(min(op.g.i_min, 0), 0)
            lhs = apply(SeriesOperator.THETA, h)
            rhs = (g_plus * h).truncate(0, degree)
            result = OperatorSpec.diff(canonical)
        case OperatorKind.QDIFF:
            factors = report.extraction.motzkin
            # lambda = q^a0, checked during extraction
            canonical = factors.a_minus.scale(factors.lam)
            lhs = apply(SeriesOperator.SIGMA_Q, h, op.q)
            rhs = (factors.a_plus.truncate(0, degree) * h).truncate(0, degree)
            result = OperatorSpec.qdiff(canonical, op.q)
        case _:
            raise ValueError(f"Unknown operator kind {op.kind}")

    verified = lhs.agrees(rhs)
    if not verified:
        logger.warning("Gauge relation doesn't hold to window depth")
    logger.info(f"Canonical form {result}")
    return CanonicalForm(result, h, verified, report)


def q_deform(diff: OperatorSpec, q: QParam, wittlen: int = DEFAULT_WITT_LENGTH,
             decay_cut: NormValue = NormValue.of(DEFAULT_DECAY_CUT), strict: bool = True) -> OperatorSpec:
    """ The q-difference operator sharing the Witt family of T d/dT - g

    With ``strict=False`` the criterion is skipped, so operators that aren't solvable can still
    be deformed.
    """
    if diff.kind is not OperatorKind.DIFF:
        raise ValueError(f"q_deform needs a differential operator, got {diff.kind}")
    q.require_small()
    if strict:
        family = _require_pass(diff, wittlen, decay_cut).family
    else:
        family = witt_extract(diff, wittlen)
    return generate(family, OperatorKind.QDIFF, q)
