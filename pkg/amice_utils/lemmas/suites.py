""" Brute-force suites for the numerical lemmas behind the radius and solvability code.

They share no code path with the radius or solvability modules beyond PAdic arithmetic, so they
act as an independent oracle. Comparisons are made on norm exponents, exactly.
"""
import logging
import random
import typing
from fractions import Fraction

from amice_utils.amiceexceptions import HypothesisViolated
from amice_utils.lemmas.lemmarange import CaseVerdict, LemmaCase, LemmaKind, LemmaRange, LemmaReport
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.numtheory import (factorial_valuation, integer_log, legendre_valuation, prime_power,
                                         valuation)
from amice_utils.padic.padic import PAdic, norm, norm_or_bound
from amice_utils.series.laurentwindow import LaurentWindow, gauss_norm
from amice_utils.series.operators import SeriesOperator, apply
from amice_utils.series.qparam import QParam, q_power

logger = logging.getLogger(__name__)

Q_DERIVATIVE_K_CAP: int = 16


def _verdict(holds: bool) -> CaseVerdict:
    return CaseVerdict.HOLDS if holds else CaseVerdict.FAILS


def _at_most(lhs: NormValue, rhs: NormValue) -> CaseVerdict:
    """ lhs <= rhs, undecided when lhs is only an upper bound that doesn't settle it """
    if lhs <= rhs:
        return CaseVerdict.HOLDS
    return CaseVerdict.UNDECIDED if lhs.bound else CaseVerdict.FAILS


def _omega(p: int) -> Fraction:
    return Fraction(1, p - 1)


def power_peak(lemma_range: LemmaRange) -> list[LemmaCase]:
    """ rho^(p^j) / |p^j| > rho^r / |r| for every r != p^j, plus the neighbouring comparisons
    of the chain rho^(p^k) / |p^k| that rise up to k = j and fall after it """
    p, j, rho = lemma_range.prime, lemma_range.j, lemma_range.rho
    e, w = rho.exponent, _omega(p)
    if j == 0 and not e > w:
        raise HypothesisViolated(f"j = 0 needs rho < omega, got {rho}")
    if j >= 1 and not w / p ** j < e < w / p ** (j - 1):
        raise HypothesisViolated(f"j = {j} needs omega^(1/p^{j - 1}) < rho < omega^(1/p^{j}), got {rho}")

    def term(r: int) -> NormValue:
        return NormValue.of(e * r - valuation(r, p))

    peak = term(prime_power(p, j))
    cases = []
    for r in range(1, lemma_range.r_max + 1):
        if r == prime_power(p, j):
            continue
        cases.append(LemmaCase({"r": r}, term(r), peak, _verdict(term(r) < peak)))

    for k in range(1, integer_log(lemma_range.r_max, p) + 1):
        before, after = term(prime_power(p, k - 1)), term(prime_power(p, k))
        if k <= j:
            cases.append(LemmaCase({"chain": f"p^{k - 1} < p^{k}"}, before, after, _verdict(before < after)))
        else:
            cases.append(LemmaCase({"chain": f"p^{k - 1} > p^{k}"}, after, before, _verdict(after < before)))
    return cases


def factorial_ratio(lemma_range: LemmaRange) -> list[LemmaCase]:
    """ |k! / n!|^(1/(k - n)) >= |p|^(l(n) + 1) for n <= k, using |n!| = omega^(n - S_n) """
    p = lemma_range.prime
    cases = []
    for n in range(lemma_range.n_min, lemma_range.n_max + 1):
        bound = NormValue.of(integer_log(n, p) + 1)
        vn = factorial_valuation(n, p)
        for k in range(n + 1, max(n, lemma_range.k_max) + 1):
            ratio = NormValue.of(Fraction(factorial_valuation(k, p) - vn, k - n))
            cases.append(LemmaCase({"n": n, "k": k}, bound, ratio, _verdict(bound <= ratio)))
    return cases


def _q_param(p: int, e: int, prec: int) -> QParam:
    return QParam(PAdic.from_int(1 + prime_power(p, e), p, prec))


def q_power_limit(lemma_range: LemmaRange) -> list[LemmaCase]:
    """ |(q^alpha - 1)/(q - 1) - alpha| <= |binom(alpha, 2)| |q - 1| along q = 1 + p^e, once
    |q - 1| <= |p|^(l(2)+1) / max(|alpha|, 1); the distance must not grow with e """
    p = lemma_range.prime
    alpha = PAdic.from_rational(lemma_range.alpha, p, lemma_range.prec)
    s_exponent = 0 if alpha.is_zero else min(alpha.valuation, 0)
    threshold = integer_log(2, p) + 1 - s_exponent
    binom2 = alpha * (alpha - 1) / 2

    cases = []
    previous = None
    for e in sorted(lemma_range.q_exponents):
        if e < threshold:
            logger.debug(f"|q - 1| = |p|^{e} is above the threshold |p|^{threshold}, skipped")
            continue
        q = _q_param(p, e, lemma_range.prec + e)
        distance = norm_or_bound((q_power(q, alpha.with_cap(q.q.cap)) - 1) / q.q_minus_one - alpha)
        bound = norm(binom2) * q.q_minus_one_norm
        cases.append(LemmaCase({"e": e, "test": "binomial bound"}, distance, bound, _at_most(distance, bound)))
        if s_exponent == 0:
            cases.append(LemmaCase({"e": e, "test": "|q - 1| bound"}, distance, q.q_minus_one_norm,
                                   _at_most(distance, q.q_minus_one_norm)))
        if previous is not None:
            cases.append(LemmaCase({"e": e, "test": "non-increasing"}, distance, previous,
                                   _at_most(distance, previous.as_bound(False))))
        previous = distance
    return cases


def q_power_norm(lemma_range: LemmaRange) -> list[LemmaCase]:
    """ |q^d - 1| = |p^(m - i)| |q - 1|^(p^i) with d = alpha p^m, (alpha, p) = 1, i = min(m, j) """
    p, j = lemma_range.prime, lemma_range.j
    w = _omega(p)
    cases = []
    for e in lemma_range.q_exponents:
        if j == 0 and not e > w:
            raise HypothesisViolated(f"j = 0 needs |q - 1| < omega, got |p|^{e}")
        if j >= 1 and not w / p ** j < e < w / p ** (j - 1):
            raise HypothesisViolated(f"j = {j} needs omega^(1/p^{j - 1}) < |q - 1| < omega^(1/p^{j}), "
                                     f"got |p|^{e}")
        q = _q_param(p, e, lemma_range.prec)
        alphas = [a for a in range(1, lemma_range.alpha_max + 1) if a % p != 0]
        for m in range(lemma_range.m_max + 1):
            i = min(m, j)
            expected = NormValue.of(m - i) * q.q_minus_one_norm ** prime_power(p, i)
            for a in alphas + [-a for a in alphas]:
                d = a * prime_power(p, m)
                actual = norm_or_bound(q.power(d) - 1)
                verdict = CaseVerdict.UNDECIDED if actual.bound else _verdict(actual == expected)
                cases.append(LemmaCase({"e": e, "alpha": a, "m": m}, actual, expected, verdict))
    return cases


def _random_window(rng: random.Random, p: int, width: int, prec: int, lo: int = None, hi: int = None,
                   min_valuation: int = 0) -> LaurentWindow:
    lo = -width if lo is None else lo
    hi = width if hi is None else hi
    raw = {}
    for i in range(lo, hi + 1):
        unit = rng.randrange(1, prime_power(p, 3))
        if unit % p == 0:
            continue
        v = rng.randrange(min_valuation, min_valuation + 3)
        raw[i] = PAdic.from_rational(Fraction(unit) * Fraction(p) ** v, p, prec)
    return LaurentWindow.build(p, raw, lo, hi)


def q_derivative(lemma_range: LemmaRange) -> list[LemmaCase]:
    """ |d_q^k f / [k]_q!|_rho <= rho^(-k) |f|_rho for random Laurent polynomials f """
    p, rho = lemma_range.prime, lemma_range.rho
    rng = random.Random(lemma_range.seed)
    k_max = min(lemma_range.k_max, Q_DERIVATIVE_K_CAP)
    if k_max < lemma_range.k_max:
        logger.debug(f"d_q suite stops at k = {k_max}")
    cases = []
    for e in lemma_range.q_exponents:
        work = lemma_range.prec + k_max * (e + 2)
        q = _q_param(p, e, work)
        for sample in range(lemma_range.samples):
            f = _random_window(rng, p, lemma_range.window, work)
            f_norm = gauss_norm(f, rho)
            current = f
            for k in range(1, k_max + 1):
                current = apply(SeriesOperator.D_Q, current, q)
                lhs = gauss_norm(current.scale(q.q_factorial(k).inverse()), rho)
                rhs = rho.inverse() ** k * f_norm
                cases.append(LemmaCase({"e": e, "sample": sample, "k": k}, lhs, rhs, _at_most(lhs, rhs)))
    return cases


def _random_padic(rng: random.Random, p: int, prec: int, min_valuation: int) -> PAdic:
    unit = rng.choice([u for u in range(-prime_power(p, 2), prime_power(p, 2) + 1) if u % p != 0])
    return PAdic.from_rational(Fraction(unit) * Fraction(p) ** rng.randrange(min_valuation, min_valuation + 4),
                               p, prec)


def ultrametric_product(lemma_range: LemmaRange) -> list[LemmaCase]:
    """ |h- + h+ + h- h+| = max(|h-|, |h+|) when |h-| < 1 and |h- + h+| = max(|h-|, |h+|), over
    random pairs in Q_p and random Laurent polynomials split by exponent sign """
    p, prec = lemma_range.prime, lemma_range.prec
    rng = random.Random(lemma_range.seed)
    cases = []
    for sample in range(lemma_range.samples):
        h_minus = _random_padic(rng, p, prec, 1)
        h_plus = _random_padic(rng, p, prec, -2)
        top = max(norm(h_minus), norm(h_plus))
        if norm(h_minus + h_plus) != top:
            continue
        lhs = norm(h_minus + h_plus + h_minus * h_plus)
        cases.append(LemmaCase({"sample": sample, "ring": "Q_p"}, lhs, top, _verdict(lhs == top)))

    width = max(lemma_range.window, 1)
    for sample in range(lemma_range.samples):
        g_minus = _random_window(rng, p, width, prec, -width, -1, min_valuation=1)
        g_plus = _random_window(rng, p, width, prec, 0, width, min_valuation=-1)
        top = max(gauss_norm(g_minus), gauss_norm(g_plus))
        lhs = gauss_norm(g_minus + g_plus + g_minus * g_plus)
        cases.append(LemmaCase({"sample": sample, "ring": "E_K"}, lhs, top, _verdict(lhs == top)))
    return cases


def legendre(lemma_range: LemmaRange) -> list[LemmaCase]:
    """ (n - S_n)/(p - 1) = sum floor(n / p^k) """
    p = lemma_range.prime
    cases = []
    for n in range(lemma_range.n_min, lemma_range.n_max + 1):
        digits, classic = factorial_valuation(n, p), legendre_valuation(n, p)
        cases.append(LemmaCase({"n": n}, NormValue.of(digits), NormValue.of(classic), _verdict(digits == classic)))
    return cases


_SUITES: dict[LemmaKind, typing.Callable[[LemmaRange], list[LemmaCase]]] = {
    LemmaKind.POWER_PEAK: power_peak,
    LemmaKind.FACTORIAL_RATIO: factorial_ratio,
    LemmaKind.Q_POWER_LIMIT: q_power_limit,
    LemmaKind.Q_POWER_NORM: q_power_norm,
    LemmaKind.Q_DERIVATIVE: q_derivative,
    LemmaKind.ULTRAMETRIC_PRODUCT: ultrametric_product,
    LemmaKind.LEGENDRE: legendre,
}


def run(lemma_range: LemmaRange) -> LemmaReport:
    cases = _SUITES[lemma_range.which](lemma_range)
    report = LemmaReport(lemma_range, cases)
    if report.counterexamples:
        logger.warning(f"{lemma_range.which}: {len(report.counterexamples)} counterexamples")
    logger.info(f"{lemma_range.which}: checked {len(cases)} cases")
    return report
