""" Solvability criteria for T d/dT - g and sigma_q - a on a finite window.

The operator is solvable when its Witt family is integral, the negative family converges
(strictly integral slots tending to zero in n) and a0 lies in Z_p; a q-difference operator also
needs N = 0 in its Motzkin factorisation. Only a window of the family is ever visible, so a pass
is reported as PASS-on-window and the limit condition is replaced by a decay surrogate: slots in
the outer third of each column must sit below a cut.
"""
import logging
import typing
from dataclasses import dataclass, field
from enum import Enum

from amice_utils.amiceexceptions import (ExponentSolveFailed, IndeterminateValuation, NotAUnit,
                                         PrecisionExhausted)
from amice_utils.config import DEFAULT_DECAY_CUT, DEFAULT_WITT_LENGTH
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.numtheory import prime_power
from amice_utils.padic.padic import PAdic, norm_or_bound
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.solvability.extract import Extraction, extract, slot_of
from amice_utils.solvability.wittfamily import WittFamily
from amice_utils.witt.wittvector import SlotVerdict, slot_integrality

logger = logging.getLogger(__name__)


class Verdict(Enum):
    PASS = "PASS-on-window"
    FAIL = "FAIL"
    INDETERMINATE = "INDETERMINATE"

    def __str__(self):
        return str(self.value)

    @property
    def exit_code(self) -> int:
        return {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.INDETERMINATE: 2}[self]


@dataclass(frozen=True, order=True)
class FailingSlot:
    """ Slot m of lambda_n that failed ``test``. The constant a0 and the Motzkin exponent N are
    reported at n = 0. """
    n: int
    m: int
    test: str = field(compare=False)
    detail: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "test": self.test, "detail": self.detail}


@dataclass(frozen=True)
class ConvVerdict:
    decay_cut: NormValue
    strict_failures: list = field(default_factory=list)
    decay_failures: list = field(default_factory=list)
    indeterminate: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """ Every negative slot is known to be strictly integral """
        return not self.strict_failures and not self.indeterminate

    @property
    def surrogate_passed(self) -> bool:
        return not self.decay_failures

    def to_json(self) -> dict:
        return {
            "decay_cut": self.decay_cut.to_json(),
            "passed": self.passed,
            "surrogate_passed": self.surrogate_passed,
            "strict_failures": [s.to_json() for s in self.strict_failures],
            "decay_failures": [s.to_json() for s in self.decay_failures],
            "indeterminate": [s.to_json() for s in self.indeterminate],
        }


def outer_third(n_max: int, p: int) -> list[int]:
    """ n coprime to p with 2 n_max / 3 < n <= n_max

    >>> outer_third(9, 2)
    [7, 9]
    """
    return [n for n in range(1, n_max + 1) if 3 * n > 2 * n_max and n % p != 0]


def conv_window(family: WittFamily, decay_cut: NormValue = NormValue.of(DEFAULT_DECAY_CUT)) -> ConvVerdict:
    """ Strict integrality of every negative slot, plus the decay surrogate """
    p = family.prime
    strict_failures, decay_failures, indeterminate = [], [], []

    for n, vector in family.negative.items():
        for m, c in enumerate(vector):
            try:
                if slot_integrality(c, strict=True) is SlotVerdict.FAIL:
                    strict_failures.append(FailingSlot(n, m, "conv_strict", str(c)))
            except IndeterminateValuation:
                indeterminate.append(FailingSlot(n, m, "conv_strict", str(c)))

    m = 0
    while m < family.wittlen and -family.i_min // prime_power(p, m) >= 1:
        n_max = -family.i_min // prime_power(p, m)
        for n in outer_third(n_max, p):
            c = family.slot(-n, m)
            if c.is_exact_zero:
                continue
            value = norm_or_bound(c)
            if value < decay_cut:
                continue
            if value.bound:
                indeterminate.append(FailingSlot(-n, m, "decay", str(c)))
            else:
                decay_failures.append(FailingSlot(-n, m, "decay", str(value)))
        m += 1

    if decay_failures:
        logger.warning(f"Decay surrogate failed at {[(s.n, s.m) for s in decay_failures]} (cut {decay_cut})")
    return ConvVerdict(decay_cut, sorted(strict_failures), sorted(decay_failures), sorted(indeterminate))


def _symmetric_lift(x: PAdic) -> typing.Optional[int]:
    """ The integer of least absolute value that x agrees with, for x in Z_p """
    exact = x.to_int()
    if exact is not None:
        return exact
    if x.is_zero or x.valuation < 0:
        return None
    modulus = prime_power(x.prime, x.valuation + x.prec)
    r = x.residue * prime_power(x.prime, x.valuation) % modulus
    return r - modulus if 2 * r > modulus else r


def a0_metadata(a0: PAdic) -> dict:
    """ What the known digits say about a0: in Z_p, an integer, and its nearest integer """
    if a0.is_indistinguishable_zero:
        in_zp = True if a0.valuation >= 0 else None
    else:
        in_zp = a0.is_exact_zero or a0.valuation >= 0
    is_integer = True if a0.to_int() is not None else (False if in_zp is False else None)
    return {
        "a0": a0.to_json(),
        "a0_in_Zp": in_zp,
        "a0_is_integer": is_integer,
        "a0_nearest_integer": _symmetric_lift(a0) if in_zp else None,
    }


@dataclass(frozen=True)
class SolvabilityReport:
    verdict: Verdict
    kind: OperatorKind
    extraction: typing.Optional[Extraction] = None
    failing_slots: list = field(default_factory=list)
    reason: typing.Optional[str] = None
    conv: typing.Optional[ConvVerdict] = None
    metadata: dict = field(default_factory=dict)

    @property
    def family(self) -> typing.Optional[WittFamily]:
        return None if self.extraction is None else self.extraction.family

    @property
    def witness(self) -> typing.Optional[FailingSlot]:
        if self.verdict is not Verdict.FAIL:
            return None
        return self.failing_slots[0]

    def slot_rows(self) -> list[dict]:
        """ Failing slots as table rows """
        return [s.to_json() for s in self.failing_slots]

    def to_json(self) -> dict:
        result = {
            "verdict": str(self.verdict),
            "kind": str(self.kind),
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.to_json(),
            "failing_slots": self.slot_rows(),
            "metadata": self.metadata,
        }
        if self.conv is not None:
            result["conv"] = self.conv.to_json()
        if self.extraction is not None:
            result["extraction"] = self.extraction.to_json()
        return result


def _integrality_failures(family: WittFamily) -> tuple[list[FailingSlot], list[FailingSlot]]:
    failures, unknown = [], []
    for n, vector in family.entries.items():
        for m, c in enumerate(vector):
            try:
                if slot_integrality(c, strict=False) is SlotVerdict.FAIL:
                    failures.append(FailingSlot(n, m, "integrality", str(c)))
            except IndeterminateValuation:
                unknown.append(FailingSlot(n, m, "integrality", str(c)))
    return failures, unknown


def check(op: OperatorSpec, wittlen: int = DEFAULT_WITT_LENGTH,
          decay_cut: NormValue = NormValue.of(DEFAULT_DECAY_CUT)) -> SolvabilityReport:
    """ Run the solvability criterion for op on its window.

    Tests run in order: a0 in Z_p, N = 0 (q-difference only), integrality of every slot, strict
    integrality and decay of the negative family, and an empty residual. Any failure gives FAIL
    with the least failing slot as witness; otherwise anything undecided gives INDETERMINATE.
    """
    if not op.series.norm_faithful:
        logger.warning("Window isn't norm-faithful, can't decide solvability")
        return SolvabilityReport(Verdict.INDETERMINATE, op.kind, reason="window isn't norm-faithful")
    if op.kind is OperatorKind.QDIFF:
        op.q.require_small()

    try:
        extraction = extract(op, wittlen, strict_log=False)
    except NotAUnit as e:
        return SolvabilityReport(Verdict.FAIL, op.kind, failing_slots=[FailingSlot(0, 0, "not_a_unit", str(e))])
    except ExponentSolveFailed as e:
        return SolvabilityReport(Verdict.FAIL, op.kind, failing_slots=[FailingSlot(0, 0, "a0", str(e))])
    except (IndeterminateValuation, PrecisionExhausted) as e:
        logger.warning(f"Extraction ran out of precision: {e}")
        return SolvabilityReport(Verdict.INDETERMINATE, op.kind, reason="precision")

    family = extraction.family
    failures: list[FailingSlot] = []
    reasons: list[str] = []

    try:
        if slot_integrality(family.a0, strict=False) is SlotVerdict.FAIL:
            failures.append(FailingSlot(0, 0, "a0", str(family.a0)))
    except IndeterminateValuation:
        reasons.append("precision")

    if op.kind is OperatorKind.QDIFF and extraction.motzkin.N != 0:
        failures.append(FailingSlot(0, 0, "N", f"N = {extraction.motzkin.N}"))

    integrality_failures, unknown = _integrality_failures(family)
    failures += integrality_failures
    if unknown:
        reasons.append("precision")

    conv = conv_window(family, decay_cut)
    already = {(s.n, s.m) for s in integrality_failures}
    failures += [s for s in conv.strict_failures if (s.n, s.m) not in already]
    if conv.indeterminate:
        reasons.append("precision")
    if not conv.surrogate_passed:
        reasons.append("decay surrogate")

    failures += [FailingSlot(*slot_of(i, op.prime), "residual", str(op.series.coefficient(i)))
                 for i in extraction.residual]
    if extraction.overflow:
        reasons.append("witt length overflow")

    metadata = a0_metadata(family.a0)
    metadata["log_domain"] = extraction.log_domain
    if extraction.motzkin is not None:
        metadata["motzkin_converged"] = extraction.motzkin.converged

    if failures:
        failures = sorted(failures)
        logger.info(f"FAIL with witness {failures[0]}")
        return SolvabilityReport(Verdict.FAIL, op.kind, extraction, failures, None, conv, metadata)
    if reasons:
        reason = "; ".join(dict.fromkeys(reasons))
        logger.info(f"INDETERMINATE: {reason}")
        return SolvabilityReport(Verdict.INDETERMINATE, op.kind, extraction, [], reason, conv, metadata)
    logger.info("PASS on the window")
    return SolvabilityReport(Verdict.PASS, op.kind, extraction, [], None, conv, metadata)

