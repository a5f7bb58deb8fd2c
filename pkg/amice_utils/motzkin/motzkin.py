""" Motzkin factorisation a = lambda * T^N * a^-(T) * a^+(T) of a unit of the Amice ring.

a^- = 1 + sum_{i <= -1} alpha_i T^i and a^+ = 1 + sum_{i >= 1} alpha_i T^i. After normalising
to u = a / (b_N T^N) = 1 + h with |h|_1 < 1, the factors are found by a quotient iteration:
split the residual d = u / (lambda' a^- a^+) - 1 into its negative, constant and positive parts
and fold each into its factor. The new residual is made of cross terms only, so its norm
exponent at least doubles each pass.

Factors are infinite series in general. The iteration runs on integer residues mod p^W, W being
the absolute precision of u, so no pass loses digits. It works on a window that extends the
support of h by a margin wide enough for the dropped tail to vanish mod p^W. The factors are
then settled at one absolute precision: W once the residual vanishes, the residual valuation
when the loop stops early. An exact input whose factors lift to integers that multiply back to
it exactly gets exact factors.
"""
import logging
import math
import typing
from dataclasses import dataclass, field
from fractions import Fraction

from amice_utils.amiceexceptions import IndeterminateValuation, NotAUnit, ParseError
from amice_utils.config import DEFAULT_PRECISION
from amice_utils.padic.normvalue import NormValue
from amice_utils.padic.numtheory import prime_power, valuation
from amice_utils.padic.padic import PAdic
from amice_utils.series.laurentwindow import LaurentWindow, gauss_norm

logger = logging.getLogger(__name__)

MAX_ITERATIONS: int = 64

# exponent -> coefficient residue mod p^W, zeros dropped
Residues = dict[int, int]


@dataclass(frozen=True)
class MotzkinFactors:
    lam: PAdic
    N: int
    a_minus: LaurentWindow
    a_plus: LaurentWindow
    iterations: int = 0
    residual_history: list = field(default_factory=list, compare=False)
    converged: bool = True

    def __post_init__(self):
        one = PAdic.one(self.lam.prime)
        if not self.a_minus.coefficient(0).agrees(one) or any(i > 0 for i in self.a_minus.support):
            raise ValueError(f"a^- must be 1 + (terms in T^-1), got {self.a_minus}")
        if not self.a_plus.coefficient(0).agrees(one) or any(i < 0 for i in self.a_plus.support):
            raise ValueError(f"a^+ must be 1 + (terms in T), got {self.a_plus}")

    @property
    def prime(self) -> int:
        return self.lam.prime

    @property
    def residual_norm_exponent(self) -> typing.Optional[Fraction]:
        """ Exponent of the last residual norm, None when the residual vanished """
        return self.residual_history[-1] if self.residual_history else None

    def to_json(self) -> dict:
        exponent = self.residual_norm_exponent
        return {
            "lambda": self.lam.to_json(),
            "N": self.N,
            "a_minus": self.a_minus.to_json(),
            "a_plus": self.a_plus.to_json(),
            "iterations": self.iterations,
            "residual_norm_exponent": None if exponent is None else str(exponent),
            "residual_history": [None if e is None else str(e) for e in self.residual_history],
            "converged": self.converged,
        }

    @classmethod
    def from_json(cls, obj: dict, prime: int, prec: int = DEFAULT_PRECISION):
        try:
            a_minus = LaurentWindow.from_json(obj["a_minus"], prime, prec)
            a_plus = LaurentWindow.from_json(obj["a_plus"], prime, prec)
            lam = PAdic.from_json(obj["lambda"], a_minus.prime, prec)
            n = int(obj["N"])
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Bad Motzkin factors: {e}")
        try:
            return cls(lam, n, a_minus, a_plus, int(obj.get("iterations", 0)))
        except ValueError as e:
            raise ParseError(str(e))


def recompose(factors: MotzkinFactors) -> LaurentWindow:
    """ lambda * T^N * a^- * a^+ """
    return (factors.a_minus * factors.a_plus).shift(factors.N).scale(factors.lam)


def leading_index(a: LaurentWindow) -> int:
    """ The least index attaining |a|_1 """
    if a.is_zero:
        raise NotAUnit("The zero series isn't a unit")
    v_min = min(c.valuation for c in a.coeffs.values())
    hidden = [i for i, A in a.unresolved.items() if A <= v_min]
    if hidden:
        raise IndeterminateValuation(f"Coefficients at {hidden} could attain |a|_1", at_least=min(
            a.unresolved[i] for i in hidden))
    return min(i for i, c in a.coeffs.items() if c.valuation == v_min)


def _absolute_precision(f: LaurentWindow) -> typing.Union[int, float]:
    """ The least absolute precision over the stored coefficients and unresolved positions """
    known = [c.absolute_precision for c in f.coeffs.values()] + list(f.unresolved.values())
    return min(known, default=math.inf)


def _is_exact(f: LaurentWindow) -> bool:
    return not f.unresolved and all(c.exact for c in f.coeffs.values())


def _residues(f: LaurentWindow, modulus: int) -> Residues:
    """ The integral coefficients of f reduced mod p^W """
    out = {}
    for i, c in f.coeffs.items():
        r = int(c.lift()) % modulus
        if r:
            out[i] = r
    return out


def _product(f: Residues, g: Residues, lo: int, hi: int, modulus: int) -> Residues:
    """ f * g mod p^W, keeping exponents in [lo, hi] """
    out: dict[int, int] = {}
    for i, x in f.items():
        for j, y in g.items():
            k = i + j
            if lo <= k <= hi:
                out[k] = out.get(k, 0) + x * y
    out = {k: c % modulus for k, c in out.items()}
    return {k: c for k, c in out.items() if c}


def _inverse(f: Residues, sign: int, degree: int, modulus: int) -> Residues:
    """ 1/f mod p^W up to X^degree, for f = 1 + (terms in X) with X = T^sign """
    terms = [(k, f[sign * k]) for k in range(1, degree + 1) if sign * k in f]
    ws = [1]
    for n in range(1, degree + 1):
        acc = sum(c * ws[n - k] for k, c in terms if k <= n)
        ws.append(-acc % modulus)
    return {sign * k: w for k, w in enumerate(ws) if w}


def _residual_exponent(d: Residues, p: int) -> typing.Optional[int]:
    return min((valuation(c, p) for c in d.values()), default=None)


def _balanced(r: int, modulus: int) -> int:
    """ The integer of least absolute value congruent to r """
    return r - modulus if 2 * r > modulus else r


def _exact_factors(a: LaurentWindow, n: int, b_n: PAdic, lam: int, minus: Residues, plus: Residues,
                   modulus: int) -> typing.Optional[tuple[Fraction, dict[int, int], dict[int, int]]]:
    """ lambda, a^- and a^+ as exact numbers, when lifting the residues to the integers of least
    absolute value reproduces a exactly """
    if not _is_exact(a) or not b_n.exact:
        return None
    lam_exact = _balanced(b_n.unit * lam % modulus, modulus) * Fraction(a.prime) ** b_n.valuation
    minus_exact = {i: _balanced(c, modulus) for i, c in minus.items()}
    plus_exact = {i: _balanced(c, modulus) for i, c in plus.items()}
    product: dict[int, int] = {}
    for i, x in minus_exact.items():
        for j, y in plus_exact.items():
            product[i + j + n] = product.get(i + j + n, 0) + x * y
    recomposed = {k: lam_exact * c for k, c in product.items() if c}
    if recomposed != {i: c.lift() for i, c in a.coeffs.items()}:
        return None
    return lam_exact, minus_exact, plus_exact


def _factor_window(prime: int, raw: dict[int, PAdic], norm_faithful: bool, truncated: bool) -> LaurentWindow:
    raw = {**raw, 0: PAdic.one(prime, max(c.cap for c in raw.values()))}
    return LaurentWindow.build(prime, raw, min(raw), max(raw), norm_faithful, truncated)


def decompose(a: LaurentWindow, max_iterations: int = MAX_ITERATIONS) -> MotzkinFactors:
    """ Factor a unit of the Amice ring as lambda * T^N * a^- * a^+

    >>> f = decompose(LaurentWindow.from_rationals(2, {1: 1, 0: 2}))
    >>> f.N, f.lam.to_int(), f.a_minus.support, f.a_plus.support
    (1, 1, [-1, 0], [0])
    """
    p = a.prime
    if not a.norm_faithful:
        logger.warning("Decomposing a window that isn't norm-faithful")
    n = leading_index(a)
    b_n = a.coeffs[n]
    u = a.shift(-n).scale(b_n.inverse())
    h_norm = gauss_norm(u - 1)
    if not h_norm < NormValue.one():
        raise NotAUnit(f"Normalised series 1 + h has |h|_1 = {h_norm}, not < 1")

    absolute = _absolute_precision(u)
    floor = u.cap if absolute == math.inf else int(absolute)
    modulus = prime_power(p, floor)
    u_res = _residues(u, modulus)
    residual = dict(u_res)
    residual[0] = (residual.get(0, 0) - 1) % modulus
    residual = {i: c for i, c in residual.items() if c}

    lam, minus, plus = 1, {0: 1}, {0: 1}
    history = [_residual_exponent(residual, p)] if residual else []
    lo, hi = min(u.i_min, 0), max(u.i_max, 0)
    if residual:
        spread = max(abs(u.i_min), abs(u.i_max), 1)
        margin = spread * math.ceil(floor / history[0])
        lo, hi = lo - margin, hi + margin
    logger.debug(f"Motzkin working window [{lo}, {hi}] mod {p}^{floor}")

    converged = True
    iterations = 0
    while residual:
        if iterations >= max_iterations:
            logger.warning(f"Motzkin iteration stopped after {iterations} passes")
            converged = False
            break
        lam = lam * (1 + residual.get(0, 0)) % modulus
        minus = _product(minus, {0: 1, **{i: c for i, c in residual.items() if i < 0}}, lo, 0, modulus)
        plus = _product(plus, {0: 1, **{i: c for i, c in residual.items() if i > 0}}, 0, hi, modulus)

        lam_inverse = pow(lam, -1, modulus)
        quotient = {i: c * lam_inverse % modulus for i, c in u_res.items()}
        quotient = _product(quotient, _inverse(minus, -1, -lo, modulus), lo, hi, modulus)
        quotient = _product(quotient, _inverse(plus, 1, hi, modulus), lo, hi, modulus)
        quotient[0] = (quotient.get(0, 0) - 1) % modulus
        residual = {i: c for i, c in quotient.items() if c}
        iterations += 1

        exponent = _residual_exponent(residual, p)
        logger.debug(f"Motzkin pass {iterations}: residual exponent {exponent}")
        if exponent is not None and exponent <= history[-1]:
            history.append(exponent)
            logger.warning(f"Motzkin residual didn't contract: {history}")
            converged = False
            break
        history.append(exponent)

    # a residual of valuation e leaves every factor known mod p^e
    last = history[-1] if history else None
    settled = floor if last is None else min(floor, last)
    exact = _exact_factors(a, n, b_n, lam, minus, plus, modulus) if last is None else None
    if exact is not None:
        lam_exact, minus_exact, plus_exact = exact
        lam_out = PAdic.from_rational(lam_exact, p, max(floor, b_n.cap))
        minus_out = {i: PAdic.from_int(c, p, floor) for i, c in minus_exact.items()}
        plus_out = {i: PAdic.from_int(c, p, floor) for i, c in plus_exact.items()}
    else:
        lam_out = b_n * PAdic.from_int(lam, p, floor).with_absolute_precision(settled)
        minus_out = {i: PAdic.from_int(c, p, floor).with_absolute_precision(settled) for i, c in minus.items()}
        plus_out = {i: PAdic.from_int(c, p, floor).with_absolute_precision(settled) for i, c in plus.items()}
    logger.debug(f"Motzkin factors settled at {'exact' if exact else f'O({p}^{settled})'}")

    return MotzkinFactors(
        lam=lam_out,
        N=n,
        a_minus=_factor_window(p, minus_out, a.norm_faithful, a.truncated),
        a_plus=_factor_window(p, plus_out, a.norm_faithful, a.truncated),
        iterations=iterations,
        residual_history=history,
        converged=converged,
    )


@dataclass(frozen=True)
class CoefficientBound:
    """ |alpha_i| rho^i against 1: ``strict`` is < 1, ``weak`` is <= 1 """
    side: str
    index: int
    value: NormValue
    strict: bool
    weak: bool

    def to_json(self) -> dict:
        return {"side": self.side, "index": self.index, "value": self.value.to_json(),
                "strict": self.strict, "weak": self.weak}


@dataclass(frozen=True)
class FactorPredicates:
    rho: NormValue
    coefficients: list[CoefficientBound]
    product_norm: NormValue
    product_bound: bool

    @property
    def all_strict(self) -> bool:
        return all(c.strict for c in self.coefficients)

    @property
    def closure(self) -> bool:
        """ Every weak bound holds but some strict bound is tight """
        return all(c.weak for c in self.coefficients) and not self.all_strict

    def to_json(self) -> dict:
        return {
            "rho": self.rho.to_json(),
            "coefficients": [c.to_json() for c in self.coefficients],
            "product_norm": self.product_norm.to_json(),
            "product_bound": self.product_bound,
            "all_strict": self.all_strict,
            "closure": self.closure,
        }


def _bound(side: str, i: int, c: PAdic, rho: NormValue) -> CoefficientBound:
    one = NormValue.one()
    if c.is_indistinguishable_zero:
        value = NormValue.of(c.valuation + i * rho.exponent, bound=True)
        if not value < one:
            raise IndeterminateValuation(f"Can't tell whether |alpha_{i}| rho^{i} < 1 from {c}",
                                         at_least=c.valuation)
        return CoefficientBound(side, i, value, True, True)
    value = NormValue.of(c.valuation + i * rho.exponent)
    return CoefficientBound(side, i, value, value < one, value <= one)


def factor_predicates(factors: MotzkinFactors, rho: NormValue = NormValue.one()) -> FactorPredicates:
    """ Per-coefficient bounds |alpha_i| rho^i < 1 (and <= 1) for both factors, plus
    |a^- a^+ - 1|_rho < 1 """
    bounds = [_bound("minus", i, c, rho) for i, c in factors.a_minus.items() if i < 0]
    bounds += [_bound("plus", i, c, rho) for i, c in factors.a_plus.items() if i > 0]
    product_norm = gauss_norm(factors.a_minus * factors.a_plus - 1, rho)
    if product_norm.bound and not product_norm < NormValue.one():
        raise IndeterminateValuation(f"Can't tell whether |a^- a^+ - 1|_rho < 1 from {product_norm}")
    return FactorPredicates(rho, bounds, product_norm, product_norm < NormValue.one())
