from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from amice_utils.amiceexceptions import NotSolvable, OutOfConvergenceDomain, ParseError, QParamError
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.padic import PAdic, norm, norm_or_bound
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.series.laurentwindow import LaurentWindow, gauss_norm, tripartite
from amice_utils.series.operators import SeriesOperator, apply
from amice_utils.series.powerseries import Direction, is_integral
from amice_utils.series.qparam import QParam
from amice_utils.solvability.canonical import canonical_form, q_deform
from amice_utils.solvability.criterion import Verdict, a0_metadata, check, conv_window, outer_third
from amice_utils.solvability.extract import extract, slot_of, witt_extract
from amice_utils.solvability.generate import artin_hasse, exp_decompose, generate
from amice_utils.solvability.wittfamily import WittFamily, column_length, family_window
from amice_utils.witt.wittvector import WittVector


def diff(coeffs, **kwargs) -> OperatorSpec:
    return OperatorSpec.diff(LaurentWindow.from_rationals(2, coeffs, **kwargs))


def test_generated_operator_passes(solvable_family):
    op = generate(solvable_family, "diff")
    assert op.g.support == [1, 2, 4, 8]
    report = check(op)
    assert report.verdict is Verdict.PASS
    assert report.verdict.exit_code == 0
    assert report.witness is None
    assert report.metadata["a0_in_Zp"]


def test_extract_inverts_generate(solvable_family):
    family = witt_extract(generate(solvable_family, OperatorKind.DIFF))
    assert family.agrees(solvable_family)
    assert [c.to_int() for c in family.entries[1]] == [1, 0, 0, 0]


def test_non_integral_slot(half_t):
    report = check(half_t)
    assert report.verdict is Verdict.FAIL
    assert report.verdict.exit_code == 1
    assert (report.witness.n, report.witness.m, report.witness.test) == (1, 0, "integrality")


def test_a0_outside_zp():
    report = check(diff({0: Fraction(1, 2)}))
    assert report.verdict is Verdict.FAIL
    assert (report.witness.n, report.witness.m, report.witness.test) == (0, 0, "a0")
    assert report.metadata["a0_in_Zp"] is False


def test_least_failing_slot_is_the_witness():
    family = WittFamily.from_rationals(2, {1: [1, Fraction(1, 2)]}, i_max=8)
    report = check(generate(family, "diff"))
    assert report.verdict is Verdict.FAIL
    assert (report.witness.n, report.witness.m) == (1, 1)
    assert report.to_json()["witness"]["test"] == "integrality"


def test_negative_family_passes():
    family = WittFamily.from_rationals(2, {-1: [2]}, i_min=-4)
    op = generate(family, "diff")
    assert op.g.agrees(LaurentWindow.from_rationals(2, {-1: -2, -2: -4, -4: -16}))

    report = check(op)
    assert report.verdict is Verdict.PASS
    assert [c.to_int() for c in report.family.entries[-1]] == [2, 0, 0]


def test_negative_family_not_strictly_integral():
    op = generate(WittFamily.from_rationals(2, {-1: [1]}, i_min=-1), "diff")
    report = check(op)
    assert report.verdict is Verdict.FAIL
    assert (report.witness.n, report.witness.m, report.witness.test) == (-1, 0, "conv_strict")


def test_decay_surrogate():
    """ lambda_{-3,0} = 2 sits in the outer third of the window above the |p|^2 cut """
    family = WittFamily.from_rationals(2, {-1: [2], -3: [2]}, i_min=-3)
    report = check(generate(family, "diff"))
    assert report.verdict is Verdict.INDETERMINATE
    assert report.reason == "decay surrogate"
    assert report.verdict.exit_code == 2

    conv = conv_window(family)
    assert conv.passed
    assert not conv.surrogate_passed
    assert [(s.n, s.m) for s in conv.decay_failures] == [(-3, 0)]

    assert conv_window(family, NormValue.one()).surrogate_passed


def test_outer_third():
    assert outer_third(9, 2) == [7, 9]
    assert outer_third(3, 3) == []


def test_qdiff_roundtrip(q9):
    family = WittFamily.from_rationals(2, {1: [1]}, i_max=2, prec=16)
    op = generate(family, "qdiff", q9)
    assert [op.a.coefficient(i).to_int() for i in range(3)] == [1, 8, 72]

    report = check(op)
    assert report.verdict is Verdict.PASS
    assert report.extraction.motzkin.N == 0
    assert report.metadata["motzkin_converged"]


def test_qdiff_nonzero_n(q9):
    report = check(OperatorSpec.qdiff(LaurentWindow.monomial(2, 1), q9))
    assert report.verdict is Verdict.FAIL
    assert (report.witness.n, report.witness.m, report.witness.test) == (0, 0, "N")


def test_qdiff_not_a_unit(q9):
    report = check(OperatorSpec.qdiff(LaurentWindow.from_rationals(2, {0: 1, 1: 1}), q9))
    assert report.verdict is Verdict.FAIL
    assert report.witness.test == "not_a_unit"


def test_window_not_norm_faithful():
    g = LaurentWindow.build(2, {1: PAdic.one(2)}, norm_faithful=False)
    report = check(OperatorSpec.diff(g))
    assert report.verdict is Verdict.INDETERMINATE
    assert report.reason == "window isn't norm-faithful"


def test_witt_length_overflow():
    report = check(diff({1: 1, 2: 1}), wittlen=1)
    assert report.verdict is Verdict.INDETERMINATE
    assert report.reason == "witt length overflow"
    assert report.extraction.overflow == [2]


@pytest.mark.parametrize(
    "a0, in_zp, is_integer, nearest",
    [
        (PAdic.from_int(3, 2), True, True, 3),
        (PAdic.from_rational(Fraction(1, 3), 2, 8), True, None, -85),
        (PAdic.from_rational(Fraction(1, 2), 2), False, False, None),
    ],
)
def test_a0_metadata(a0, in_zp, is_integer, nearest):
    metadata = a0_metadata(a0)
    assert metadata["a0_in_Zp"] is in_zp
    assert metadata["a0_is_integer"] is is_integer
    assert metadata["a0_nearest_integer"] == nearest


def test_slot_of():
    assert slot_of(-12, 2) == (-3, 2)
    assert slot_of(9, 3) == (1, 2)


def test_extract_report_json(solvable_family):
    extraction = extract(generate(solvable_family, "diff"))
    obj = extraction.to_json()
    assert obj["residual"] == []
    assert WittFamily.from_json(obj["family"]).agrees(solvable_family)


def test_artin_hasse():
    lam = WittFamily.from_rationals(2, {1: [1]})
    assert [c.valuation for _, c in artin_hasse(lam, 3).items()] == [0, 0, 0, 1]

    non_integral = WittFamily.from_rationals(2, {1: [Fraction(1, 2)]})
    assert norm(artin_hasse(non_integral, 1).coefficient(1)) > NormValue.one()

    with pytest.raises(ValueError):
        artin_hasse(lam, 0)


def test_artin_hasse_minus_direction():
    family = WittFamily.from_rationals(2, {-1: [2]})
    series = artin_hasse(family, 2, Direction.MINUS)
    assert all(i <= 0 for i in series.support)
    assert series.coefficient(-1).agrees(2)


@st.composite
def integral_families(draw):
    p = draw(st.sampled_from([2, 3]))
    indices = [1, 3] if p == 2 else [1, 2]
    digits = st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=3)
    return WittFamily.from_rationals(p, {n: draw(digits) for n in indices})


@settings(max_examples=30, deadline=None)
@given(family=integral_families())
def test_artin_hasse_integral_family(family):
    assert is_integral(artin_hasse(family, 8))


def test_exp_decompose():
    b = {1: PAdic.from_int(3, 2), 2: PAdic.from_int(9, 2), 4: PAdic.from_int(81, 2)}
    family = exp_decompose(b, 2, degree=4)
    assert [c.to_int() for c in family.entries[1]] == [3, 0, 0]

    one = exp_decompose({1: PAdic.one(2)}, 2, degree=2)
    assert [c.lift() for c in one.entries[1]] == [1, Fraction(-1, 2)]

    with pytest.raises(ValueError):
        exp_decompose({0: PAdic.one(2)}, 2)


def test_canonical_form_drops_positive_part():
    op = generate(WittFamily.from_rationals(2, {1: [1]}, i_max=4), "diff")
    form = canonical_form(op)
    assert form.operator.g.is_zero
    assert form.verified
    assert form.to_json()["verdict"] == "PASS-on-window"


def test_canonical_form_of_a_constant():
    form = canonical_form(diff({0: 5}))
    assert form.operator.g.agrees(LaurentWindow.constant(2, 5))
    assert form.verified


def test_canonical_form_qdiff(q9):
    form = canonical_form(OperatorSpec.qdiff(LaurentWindow.constant(2, 9, prec=16), q9))
    assert form.operator.a.coefficient(0).agrees(q9.q)
    assert form.verified


def test_canonical_form_needs_solvable(half_t):
    with pytest.raises(NotSolvable):
        canonical_form(half_t)


def test_q_deform(q9):
    g = LaurentWindow.from_rationals(2, {1: 1}, i_min=0, i_max=1)
    deformed = q_deform(OperatorSpec.diff(g), q9, strict=False)
    assert deformed.kind is OperatorKind.QDIFF
    assert deformed.a.coefficient(0).agrees(1)
    assert deformed.a.coefficient(1).agrees(q9.q - 1)

    wide = OperatorSpec.diff(LaurentWindow.from_rationals(2, {1: 1}, i_min=0, i_max=4))
    assert q_deform(wide, q9, strict=False).a.coefficient(2).agrees(32)
    # lambda_{1,1} = -1/2 on the wider window
    with pytest.raises(NotSolvable):
        q_deform(wide, q9, strict=True)


def test_q_deform_errors(q9):
    with pytest.raises(ValueError):
        q_deform(OperatorSpec.qdiff(LaurentWindow.constant(2, 1), q9), q9)
    with pytest.raises(QParamError):
        q_deform(diff({1: 1}), QParam.from_rational(3, 2, 16))


def test_generate_errors(solvable_family):
    with pytest.raises(OutOfConvergenceDomain):
        generate(solvable_family, "qdiff", QParam.from_rational(3, 2, 16))
    with pytest.raises(ValueError):
        generate(solvable_family, "qdiff")


def test_witt_family():
    with pytest.raises(ValueError):
        WittFamily.from_rationals(2, {2: [1]})
    with pytest.raises(ValueError):
        WittFamily(2, {}, None, 1, 2)

    family = WittFamily.from_rationals(3, {1: [1, 2], -2: [3]}, a0=Fraction(1, 3), i_min=-6, i_max=9)
    assert WittFamily.from_json(family.to_json()).agrees(family)
    assert family.slots(1) == 3
    assert family.slots(-2) == 2
    assert family.slot(1, 2).is_exact_zero
    assert not family.agrees(WittFamily.from_rationals(3, {1: [1, 2]}, a0=Fraction(1, 3), i_max=9))

    with pytest.raises(ParseError):
        WittFamily.from_json({"entries": [{"n": 1}]}, 2)


def test_family_window():
    entries = {1: WittVector.from_rationals(2, [1, 1]), -3: WittVector.from_rationals(2, [1])}
    assert family_window(entries, 2) == (-3, 2)
    assert column_length(3, 24, 2, 8) == 4
    assert column_length(3, 2, 2, 8) == 0


def test_qdiff_family_with_both_signs():
    family = WittFamily.from_rationals(2, {1: [1], -1: [2]}, i_min=-2, i_max=8, prec=24)
    report = check(generate(family, "qdiff", QParam.from_rational(9, 2, 24)))
    assert report.verdict is Verdict.PASS
    assert report.family.slot(-1, 0).agrees(2)
    assert report.family.slot(1, 0).agrees(1)

    lam = report.extraction.motzkin.lam
    assert lam.absolute_precision >= 24
    assert lam.agrees(1)


WINDOWS = {"diff": (-4, 8), "qdiff": (-2, 4)}


@st.composite
def criterion_families(draw, kind: str):
    """ Integral positive columns, negative columns divisible by 8 so the decay surrogate holds """
    i_min, i_max = WINDOWS[kind]
    entries = {}
    for n in (1, 3, -1, -3):
        length = column_length(n, i_max if n > 0 else -i_min, 2, 8)
        digits = st.integers(min_value=-3, max_value=3) if n > 0 else st.sampled_from([-8, 0, 8])
        if length:
            entries[n] = [draw(digits) for _ in range(length)]
    a0 = draw(st.integers(min_value=-3, max_value=3) if kind == "diff" else st.sampled_from([0, 1]))
    return entries, a0


def criterion_report(kind: str, entries: dict, a0):
    i_min, i_max = WINDOWS[kind]
    family = WittFamily.from_rationals(2, entries, a0=a0, i_min=i_min, i_max=i_max, prec=24)
    q = QParam.from_rational(9, 2, 24) if kind == "qdiff" else None
    return check(generate(family, kind, q))


@pytest.mark.parametrize("kind", ["diff", "qdiff"])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_generated_families_pass(kind, data):
    entries, a0 = data.draw(criterion_families(kind))
    report = criterion_report(kind, entries, a0)
    assert report.verdict is Verdict.PASS
    if kind == "qdiff":
        assert report.extraction.motzkin.N == 0
        assert norm_or_bound(report.extraction.motzkin.lam - 1) < NormValue.one()


@pytest.mark.parametrize("kind", ["diff", "qdiff"])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_corrupted_slot_is_the_witness(kind, data):
    entries, a0 = data.draw(criterion_families(kind))
    if kind == "diff":
        slots = [(n, m) for n, column in entries.items() for m in range(len(column))]
        n, m = data.draw(st.sampled_from(slots))
    else:
        # the last slot of lambda_1, or the first of lambda_-1
        n = data.draw(st.sampled_from([1, -1]))
        m = len(entries[n]) - 1 if n > 0 else 0
    corrupted = {k: list(column) for k, column in entries.items()}
    corrupted[n][m] = Fraction(1, 2) if n > 0 else 1

    report = criterion_report(kind, corrupted, a0)
    assert report.verdict is Verdict.FAIL
    assert (report.witness.n, report.witness.m) == (n, m)
    assert report.witness.test == ("integrality" if n > 0 else "conv_strict")


def ah_columns(p: int) -> list[int]:
    return [1, 3, 5] if p == 2 else [1, 2, 4]


@st.composite
def deep_integral_families(draw):
    p = draw(st.sampled_from([2, 3]))
    digits = st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=4)
    # lambda_0^64 has to stay exact
    return WittFamily.from_rationals(p, {n: draw(digits) for n in ah_columns(p)}, prec=128)


@settings(max_examples=25, deadline=None)
@given(family=deep_integral_families())
def test_artin_hasse_integral_to_degree_64(family):
    assert is_integral(artin_hasse(family, 64))


@st.composite
def one_bad_slot(draw):
    """ An integral family with a single slot of norm p, and that slot """
    p = draw(st.sampled_from([2, 3]))
    slots = [(n, m) for n in ah_columns(p) for m in range(7) if n * p ** m <= 64]
    n, m = draw(st.sampled_from(slots))
    entries = {k: draw(st.lists(st.integers(min_value=-3, max_value=3), min_size=7, max_size=7))
               for k in ah_columns(p)}
    entries[n][m] = Fraction(draw(st.sampled_from([1, -1, p + 1])), p)
    return WittFamily.from_rationals(p, entries, prec=128), n * p ** m


@settings(max_examples=20, deadline=None)
@given(case=one_bad_slot())
def test_artin_hasse_sees_a_slot_of_norm_p(case):
    family, degree = case
    series = artin_hasse(family, 64)
    assert not is_integral(series)
    assert norm(series.coefficient(degree)) > NormValue.one()


@st.composite
def gauge_families(draw):
    i_max = draw(st.sampled_from([4, 8, 16, 32]))
    entries = {n: draw(st.lists(st.integers(min_value=-3, max_value=3), min_size=column_length(n, i_max, 2, 8),
                                max_size=column_length(n, i_max, 2, 8)))
               for n in (1, 3) if column_length(n, i_max, 2, 8)}
    entries[-1] = draw(st.lists(st.sampled_from([-8, 0, 8]), min_size=2, max_size=2))
    a0 = draw(st.integers(min_value=-3, max_value=3))
    return WittFamily.from_rationals(2, entries, a0=a0, i_min=-2, i_max=i_max, prec=64)


@settings(max_examples=50, deadline=None)
@given(family=gauge_families())
def test_gauge_removes_the_positive_part(family):
    op = generate(family, "diff")
    form = canonical_form(op)
    assert form.verified
    assert is_integral(form.gauge)
    assert all(i <= 0 for i in form.operator.g.support)

    g_minus, a0, g_plus = tripartite(op.g)
    assert form.operator.g.agrees(g_minus + a0)
    theta_h = apply(SeriesOperator.THETA, form.gauge)
    assert theta_h.agrees((g_plus * form.gauge).truncate(0, family.i_max))


def test_q_deform_tends_to_g():
    """ (a - 1) / (q - 1) approaches g = T as |q - 1| = |2|^k shrinks """
    op = OperatorSpec.diff(LaurentWindow.from_rationals(2, {1: 1}, i_min=0, i_max=4))
    errors = []
    for k in range(3, 7):
        q = QParam.from_rational(1 + 2 ** k, 2, 24)
        a = q_deform(op, q, strict=False).a
        quotient = (a - 1).scale(q.q_minus_one.inverse())
        assert norm_or_bound(quotient.coefficient(1) - 1) <= NormValue.of(k)
        errors.append(gauss_norm(quotient - op.g))
    # the T^2 term (q - 1) / 2 dominates
    assert errors == [NormValue.of(k - 1) for k in range(3, 7)]
    assert all(x > y for x, y in zip(errors, errors[1:]))
