import pytest

from amice_utils.amiceexceptions import HypothesisViolated, ParseError
from amice_utils.lemmas.lemmarange import CaseVerdict, LemmaKind, LemmaRange, default_q_exponents, default_rho
from amice_utils.lemmas.suites import run
from amice_utils.padic.normvalue import NormValue


@pytest.mark.parametrize("p, j", [(2, 0), (2, 1), (3, 0), (3, 1)])
def test_power_peak(p, j):
    report = run(LemmaRange(LemmaKind.POWER_PEAK, prime=p, j=j, r_max=200))
    assert report.holds
    assert len(report.cases) > 0


def test_power_peak_hypothesis():
    with pytest.raises(HypothesisViolated):
        run(LemmaRange(LemmaKind.POWER_PEAK, prime=2, j=0, rho=NormValue.one()))


def test_factorial_ratio():
    report = run(LemmaRange(LemmaKind.FACTORIAL_RATIO, prime=2, n_min=3, n_max=3, k_max=40))
    assert report.counterexamples == []
    assert len(report.cases) == 37


@pytest.mark.parametrize("p", [2, 3, 5])
def test_legendre(p):
    report = run(LemmaRange(LemmaKind.LEGENDRE, prime=p, n_max=60))
    assert report.holds
    assert all(c.verdict is CaseVerdict.HOLDS for c in report.cases)


def test_q_power_limit():
    report = run(LemmaRange(LemmaKind.Q_POWER_LIMIT, prime=2))
    assert report.holds


def test_q_power_norm():
    report = run(LemmaRange(LemmaKind.Q_POWER_NORM, prime=2, m_max=3, alpha_max=5))
    assert report.holds
    assert not report.undecided


def test_q_power_norm_hypothesis():
    with pytest.raises(HypothesisViolated):
        run(LemmaRange(LemmaKind.Q_POWER_NORM, prime=2, j=1))


def test_q_derivative():
    lemma_range = LemmaRange(LemmaKind.Q_DERIVATIVE, prime=2, samples=2, k_max=4, window=2, q_exponents=(2,))
    assert lemma_range.rho == NormValue.one()
    assert run(lemma_range).holds


def test_ultrametric_product():
    report = run(LemmaRange(LemmaKind.ULTRAMETRIC_PRODUCT, prime=3, samples=5, window=2))
    assert report.holds


def test_same_seed_same_cases():
    lemma_range = LemmaRange(LemmaKind.ULTRAMETRIC_PRODUCT, prime=2, samples=4, seed=7)
    assert run(lemma_range).to_json() == run(lemma_range).to_json()


def test_lemma_range():
    with pytest.raises(ValueError):
        LemmaRange(LemmaKind.LEGENDRE, n_min=5, n_max=2)
    with pytest.raises(ValueError):
        LemmaRange(LemmaKind.Q_DERIVATIVE, samples=0)
    with pytest.raises(ParseError):
        LemmaKind.from_string("L9")
    assert LemmaKind.from_string("L3_0_10") is LemmaKind.FACTORIAL_RATIO

    assert default_q_exponents(2) == (2, 3, 4)
    assert default_rho(2, 0) == NormValue.of(2)


def test_report_json():
    report = run(LemmaRange(LemmaKind.LEGENDRE, n_max=5))
    obj = report.to_json(include_cases=False)
    assert "cases" not in obj
    assert obj["checked"] == 5
    assert obj["range"]["which"] == "legendre"
    assert len(report.to_json()["cases"]) == 5
