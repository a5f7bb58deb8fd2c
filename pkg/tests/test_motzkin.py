from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from amice_utils.amiceexceptions import IndeterminateValuation, NotAUnit, ParseError
from amice_utils.motzkin.motzkin import (MotzkinFactors, decompose, factor_predicates, leading_index,
                                         recompose)
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.padic import PAdic
from amice_utils.series.laurentwindow import LaurentWindow


def factors(lam, n, a_minus, a_plus, prec=32):
    return MotzkinFactors(
        PAdic.from_rational(lam, 2, prec),
        n,
        LaurentWindow.from_rationals(2, a_minus, prec),
        LaurentWindow.from_rationals(2, a_plus, prec),
    )


def test_decompose_trivial():
    f = decompose(LaurentWindow.constant(2, 1))
    assert (f.lam.to_int(), f.N, f.iterations) == (1, 0, 0)
    assert f.a_minus.agrees(LaurentWindow.constant(2, 1))
    assert f.a_plus.agrees(LaurentWindow.constant(2, 1))


def test_decompose_constant():
    f = decompose(LaurentWindow.constant(2, 3))
    assert f.lam.to_int() == 3
    assert f.N == 0


def test_decompose_t_plus_two(t_plus_two):
    f = decompose(t_plus_two)
    assert f.N == 1
    assert f.lam.agrees(1)
    assert f.a_minus.agrees(LaurentWindow.from_rationals(2, {0: 1, -1: 2}))
    assert f.a_plus.agrees(LaurentWindow.constant(2, 1))
    assert f.converged
    assert recompose(f).agrees(t_plus_two)


def test_roundtrip():
    """ Recompose known factors, then recover them """
    known = factors(3, 2, {0: 1, -1: 2, -2: 4}, {0: 1, 1: 6, 2: 2}, prec=16)
    a = recompose(known)
    found = decompose(a)
    assert found.N == 2
    assert found.lam.exact
    assert found.lam.lift() == 3
    assert found.lam.prec >= 16
    assert exact_coefficients(found.a_minus) == {-2: 4, -1: 2, 0: 1}
    assert exact_coefficients(found.a_plus) == {0: 1, 1: 6, 2: 2}

    # the residual norm exponent grows strictly from pass to pass
    history = [e for e in found.residual_history if e is not None]
    assert history == sorted(set(history))


def test_not_a_unit():
    with pytest.raises(NotAUnit):
        decompose(LaurentWindow.from_rationals(2, {0: 1, 1: 1}))
    with pytest.raises(NotAUnit):
        decompose(LaurentWindow.zero(2))


def test_leading_index():
    assert leading_index(LaurentWindow.from_rationals(2, {-1: 1, 0: 1, 3: 2})) == -1
    hidden = LaurentWindow.build(2, {0: PAdic.indistinguishable(2, 0), 1: PAdic.from_int(2, 2)})
    with pytest.raises(IndeterminateValuation):
        leading_index(hidden)


def test_factor_shapes():
    with pytest.raises(ValueError):
        factors(1, 0, {0: 1}, {0: 1, -1: 2})
    with pytest.raises(ValueError):
        factors(1, 0, {0: 3}, {0: 1})


def test_json(t_plus_two):
    f = decompose(t_plus_two)
    back = MotzkinFactors.from_json(f.to_json(), 2)
    assert back.N == f.N
    assert back.a_minus.agrees(f.a_minus)

    with pytest.raises(ParseError):
        MotzkinFactors.from_json({"lambda": 1, "N": 0}, 2)
    bad = f.to_json()
    bad["a_plus"] = {"coeffs": [[-1, 2]]}
    with pytest.raises(ParseError):
        MotzkinFactors.from_json(bad, 2)


def test_strict_predicates():
    predicates = factor_predicates(factors(1, 0, {0: 1}, {0: 1, 1: 2}))
    assert predicates.all_strict
    assert not predicates.closure
    assert predicates.product_bound
    assert predicates.product_norm == NormValue.of(1)


def test_closure_predicates():
    """ |alpha_-1| = 1 only satisfies the weak bound """
    predicates = factor_predicates(factors(1, 0, {0: 1, -1: 1}, {0: 1}))
    assert not predicates.all_strict
    assert predicates.closure
    assert not predicates.product_bound
    assert predicates.to_json()["closure"]


def test_predicates_off_the_unit_circle():
    # rho = |p|^-1 > 1 lifts |alpha_1| rho to 1
    predicates = factor_predicates(factors(1, 0, {0: 1}, {0: 1, 1: 2}), NormValue.of(-1))
    assert not predicates.all_strict
    assert predicates.closure


def exact_coefficients(f: LaurentWindow) -> dict:
    assert all(c.exact for c in f.coeffs.values())
    return {i: c.lift() for i, c in f.coeffs.items()}


def strictly_increasing(history: list) -> bool:
    exponents = [e for e in history if e is not None]
    return all(x < y for x, y in zip(exponents, exponents[1:]))


def test_roundtrip_is_exact():
    a = LaurentWindow.from_rationals(2, {-1: 2, 0: 5, 1: 2})
    f = decompose(a)
    assert f.N == 0
    assert f.lam.exact
    assert f.lam.lift() == 1
    assert exact_coefficients(f.a_minus) == {-1: 2, 0: 1}
    assert exact_coefficients(f.a_plus) == {0: 1, 1: 2}
    assert f.residual_history[:2] == [1, 2]
    assert f.residual_history[-1] is None
    assert strictly_increasing(f.residual_history)


def test_stopped_iteration_keeps_only_earned_digits():
    a = LaurentWindow.from_rationals(2, {-1: 2, 0: 5, 1: 2})
    f = decompose(a, max_iterations=1)
    assert not f.converged
    assert f.residual_history == [1, 2]
    assert not f.lam.exact
    assert f.lam.absolute_precision == 2
    assert f.lam.agrees(1)
    assert f.a_minus.coefficient(-1).absolute_precision == 2
    assert f.a_minus.agrees(LaurentWindow.from_rationals(2, {0: 1, -1: 2}))


def test_inexact_input_precision():
    a = LaurentWindow.from_rationals(2, {0: 1, 1: Fraction(2, 3)}, prec=8)
    f = decompose(a)
    assert f.converged
    assert f.lam.absolute_precision == 9
    assert f.a_plus.coefficient(1).absolute_precision == 9
    assert f.a_plus.coefficient(1).agrees(a.coefficient(1))
    assert f.a_minus.support == [0]


@st.composite
def factor_triples(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    unit = draw(st.integers(min_value=-7, max_value=7).filter(lambda s: s % p != 0))
    lam = unit * Fraction(p) ** draw(st.integers(min_value=-1, max_value=1))
    n = draw(st.integers(min_value=-2, max_value=2))
    small = st.integers(min_value=-3, max_value=3)
    minus = {0: 1, -1: p * draw(small), -2: p * draw(small)}
    plus = {0: 1, 1: p * draw(small), 2: p * draw(small)}
    return p, lam, n, minus, plus


@settings(max_examples=200, deadline=None)
@given(triple=factor_triples())
def test_decompose_recovers_factors(triple):
    p, lam, n, minus, plus = triple
    known = MotzkinFactors(
        PAdic.from_rational(lam, p, 12),
        n,
        LaurentWindow.from_rationals(p, minus, 12),
        LaurentWindow.from_rationals(p, plus, 12),
    )
    found = decompose(recompose(known))
    assert found.N == n
    assert found.lam.exact
    assert found.lam.lift() == lam
    assert exact_coefficients(found.a_minus) == {i: c for i, c in minus.items() if c}
    assert exact_coefficients(found.a_plus) == {i: c for i, c in plus.items() if c}
    assert found.converged
    assert strictly_increasing(found.residual_history)


@st.composite
def window_units(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(min_value=-2, max_value=2))
    lead = draw(st.integers(min_value=-7, max_value=7).filter(lambda s: s % p != 0))
    small = st.integers(min_value=-4, max_value=4)
    coeffs = {n + k: p * draw(small) for k in (-2, -1, 1, 2)}
    coeffs[n] = lead
    return p, n, coeffs


@settings(max_examples=200, deadline=None)
@given(unit=window_units())
def test_recompose_reproduces_units(unit):
    p, n, coeffs = unit
    a = LaurentWindow.from_rationals(p, coeffs, 12)
    found = decompose(a)
    assert found.N == n
    assert found.converged
    assert strictly_increasing(found.residual_history)
    assert found.lam.exact or found.lam.prec >= 12
    assert recompose(found).agrees(a)
