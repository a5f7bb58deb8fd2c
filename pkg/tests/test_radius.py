from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from amice_utils.amiceexceptions import ParseError, PreconditionViolated
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.padic import PAdic
from amice_utils.radius.iterates import first_iterate, iterates
from amice_utils.radius.operatorspec import OperatorKind, OperatorSpec
from amice_utils.radius.radius import (Provenance, constant_qdiff_profile, estimate, lower_bound, loglog_rows,
                                       ray_estimate, ray_table, sharp_test, small_radius)
from amice_utils.series.laurentwindow import LaurentWindow, gauss_norm
from amice_utils.series.qparam import QParam

omega = NormValue.omega(2)


def diff(coeffs, **kwargs) -> OperatorSpec:
    return OperatorSpec.diff(LaurentWindow.from_rationals(2, coeffs, **kwargs))


def test_small_radius(half_t):
    """ |g|_1 > 1 gives the closed form omega / |g_[1]|_1 """
    report = ray_estimate(half_t, k_max=8, s_max=8)
    assert report.exact.provenance is Provenance.SMALL_RADIUS
    assert report.exact.value == NormValue.of(2)
    assert all(e == NormValue.of(2) for e in report.estimates)
    assert report.lower_bound == NormValue.of(2)
    assert small_radius(half_t) == NormValue.of(2)


def test_small_radius_off_the_unit_circle(half_t):
    rho = NormValue.of(Fraction(1, 2))
    report = ray_estimate(half_t, rho, k_max=6)
    assert report.exact.provenance is Provenance.SMALL_RADIUS
    assert report.value == NormValue.of(2)


def test_trivial_operator():
    report = ray_estimate(OperatorSpec.diff(LaurentWindow.zero(2)), k_max=4)
    assert report.exact.provenance is Provenance.BY_CONSTRUCTION
    assert report.exact.value == NormValue.one()
    assert report.estimates == [NormValue.one()] * 4


def test_sharp_test_proves():
    op = diff({1: 2})
    result = sharp_test(op, s_max=8)
    assert result.proven
    assert result.witness == 1

    report = ray_estimate(op, k_max=8, s_max=8)
    assert report.exact.provenance is Provenance.SHARP_TEST
    assert report.exact.strict_lower_bound
    assert report.exact.value == omega


def test_sharp_test_inconclusive():
    """ g = T: every iterate is the constant 1 """
    op = diff({1: 1})
    result = sharp_test(op, s_max=10)
    assert not result.proven
    assert result.to_json()["verdict"] == "Inconclusive"
    assert len(result.norms) == 10

    report = ray_estimate(op, k_max=8, s_max=8)
    assert report.exact is None
    assert report.running_min_tail == omega
    assert report.lower_bound == omega


def test_sharp_test_precondition(half_t):
    with pytest.raises(PreconditionViolated):
        sharp_test(half_t, s_max=4)


def test_qdiff_trivial(q9):
    op = OperatorSpec.qdiff(LaurentWindow.constant(2, 1), q9)
    assert op.is_trivial
    assert sharp_test(op, s_max=4).witness == 1


def test_qdiff_small_radius(q9):
    """ omega_q |q - 1| / |a - 1|_1 for |a - 1|_1 > |q - 1| """
    op = OperatorSpec.qdiff(LaurentWindow.from_rationals(2, {0: 1, 1: 1}), q9)
    report = ray_estimate(op, k_max=6)
    assert report.exact.provenance is Provenance.SMALL_RADIUS
    assert report.exact.value == NormValue.of(4)
    assert all(e == NormValue.of(4) for e in report.estimates)


def test_qdiff_solution_t(q9):
    """ sigma_q - q is solved by T, so g_[2] cancels """
    op = OperatorSpec.qdiff(LaurentWindow.constant(2, 9, prec=16), q9)
    g = iterates(op, 2)
    assert g[0].agrees(LaurentWindow.monomial(2, -1))
    assert g[1].is_zero
    assert sharp_test(op, s_max=4).witness == 2


def test_iterates_cancel():
    """ T d/dT - 1 is solved by T: g_[1] = T^-1 and g_[2] = -T^-2 + T^-2 = 0 """
    g = iterates(diff({0: 1}), 3)
    assert g[0].agrees(LaurentWindow.monomial(2, -1))
    assert g[1].is_zero
    assert not g[1].unresolved
    assert g[2].is_zero

    with pytest.raises(ValueError):
        iterates(diff({0: 1}), 0)


def test_first_iterate(q9):
    assert first_iterate(diff({2: 3})).agrees(LaurentWindow.monomial(2, 1, 3))
    op = OperatorSpec.qdiff(LaurentWindow.from_rationals(2, {0: 1, 1: 8}), q9)
    assert first_iterate(op).agrees(LaurentWindow.constant(2, 1))


def test_budget_truncates():
    op = diff({1: 1, -1: 1})
    report = ray_estimate(op, k_max=4, s_max=4, budget=3)
    assert report.truncated


def test_estimate():
    assert estimate(omega, NormValue.one(), NormValue.zero(), 3) == NormValue.one()
    assert estimate(omega, NormValue.one(), NormValue.of(-2), 2) == NormValue.of(2)
    assert lower_bound(diff({1: 1})) == omega


def test_loglog_rows(half_t):
    reports = ray_table(half_t, [NormValue.one(), NormValue.of(Fraction(1, 2))], k_max=4)
    rows = loglog_rows(reports)
    assert [row["rho_exponent"] for row in rows] == ["0", "1/2"]
    assert rows[0]["log_ray_over_rho"] == "-2"
    assert rows[1]["log_ray_over_rho"] == "-3/2"
    assert {row["provenance"] for row in rows} == {"SmallRadius"}


def test_constant_qdiff_profile(q9):
    # sigma_q - q: S_1 = 1 - q and S_n = 0 for n >= 2
    profile = constant_qdiff_profile(q9.q, q9, 4)
    assert profile[0] == NormValue.one()
    assert all(v.is_zero or v.bound for v in profile[1:])

    with pytest.raises(ValueError):
        constant_qdiff_profile(q9.q, q9, 0)


def test_operator_spec(q9):
    op = OperatorSpec.qdiff(LaurentWindow.from_rationals(2, {0: 1, 1: 2}, prec=16), q9)
    back = OperatorSpec.from_json(op.to_json(), 2, 16)
    assert back.kind is OperatorKind.QDIFF
    assert back.a.agrees(op.a)
    assert back.q.q.agrees(q9.q)

    with pytest.raises(AttributeError):
        op.g
    with pytest.raises(ValueError):
        OperatorSpec(OperatorKind.DIFF, op.a, q9)
    with pytest.raises(ParseError):
        OperatorSpec.from_json({"kind": "qdiff", "a": op.a.to_json()}, 2)
    with pytest.raises(ParseError):
        OperatorKind.from_string("integral")


def test_operator_from_json_integers():
    op = OperatorSpec.from_json({"kind": "diff", "g": {"coeffs": [[1, "1/2"]]}}, 2)
    assert op.g.coefficient(1).lift() == Fraction(1, 2)
    assert str(op).startswith("T d/dT")
    assert PAdic.from_int(1, 2).agrees(op.g.coefficient(1) * 2)


@st.composite
def large_diff_operators(draw):
    """ |g|_1 = |p|^-s, with the closed form omega |p|^s """
    p = draw(st.sampled_from([2, 3]))
    s = draw(st.integers(min_value=1, max_value=2))
    lead = draw(st.sampled_from([0, 1, 2]))
    coeffs = {i: draw(st.integers(min_value=-3, max_value=3)) for i in (0, 1, 2) if i != lead}
    coeffs[lead] = Fraction(draw(st.sampled_from([1, -1, p + 1])), p ** s)
    return OperatorSpec.diff(LaurentWindow.from_rationals(p, coeffs)), NormValue.of(Fraction(1, p - 1) + s)


@st.composite
def large_qdiff_operators(draw):
    """ |a - 1|_1 = |2|^t > |q - 1| = |2|^3, with the closed form omega_q |2|^(3 - t) """
    t = draw(st.integers(min_value=0, max_value=2))
    lead = draw(st.sampled_from([0, 1, 2]))
    coeffs = {i: 8 * draw(st.integers(min_value=-3, max_value=3)) for i in (0, 1, 2) if i != lead}
    coeffs[lead] = draw(st.sampled_from([1, -1, 3])) * 2 ** t
    coeffs[0] = coeffs.get(0, 0) + 1
    a = LaurentWindow.from_rationals(2, coeffs, prec=16)
    return OperatorSpec.qdiff(a, QParam.from_rational(9, 2, 16)), NormValue.of(1 + 3 - t)


@pytest.mark.parametrize("operators", [large_diff_operators(), large_qdiff_operators()], ids=["diff", "qdiff"])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_small_radius_closed_form_every_k(operators, data):
    op, closed = data.draw(operators)
    report = ray_estimate(op, k_max=64)
    assert not report.truncated
    assert report.exact.provenance is Provenance.SMALL_RADIUS
    assert report.exact.value == closed
    assert len(report.estimates) == 64
    assert all(e == closed for e in report.estimates)


@settings(max_examples=30, deadline=None)
@given(value=st.integers(min_value=-31, max_value=31).filter(lambda v: v % 2 and v not in (1, 9)))
def test_constant_qdiff_profile_matches_iterates(value):
    """ |g_[n]|_1^(1/n) from the closed sum and from the recursion """
    q = QParam.from_rational(9, 2, 16)
    profile = constant_qdiff_profile(PAdic.from_int(value, 2, 16), q, 8)
    gs = iterates(OperatorSpec.qdiff(LaurentWindow.constant(2, value, prec=16), q), 8)
    for n, (expected, g_n) in enumerate(zip(profile, gs), start=1):
        assert not expected.bound
        assert expected == gauss_norm(g_n) ** Fraction(1, n)
