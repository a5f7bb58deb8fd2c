""" Integer helpers shared by the p-adic code and the lemma suites """
import functools

import sympy
from sympy.ntheory import digits


@functools.lru_cache(maxsize=4096)
def prime_power(p: int, k: int) -> int:
    return p ** k


def valuation(m: int, p: int) -> int:
    """ v_p(m) for a nonzero integer m

    >>> valuation(24, 2)
    3
    >>> valuation(-9, 3)
    2
    """
    if m == 0:
        raise ValueError("The valuation of 0 is infinite")
    return int(sympy.multiplicity(p, m))


def split(m: int, p: int) -> tuple[int, int]:
    """ Write a nonzero integer as p^v * u with u coprime to p, keeping the sign on u """
    v = valuation(m, p)
    return v, m // prime_power(p, v)


def coprime_decomposition(i: int, p: int) -> tuple[int, int]:
    """ Write a positive integer as n * p^m with (n, p) = 1

    >>> coprime_decomposition(12, 2)
    (3, 2)
    """
    if i < 1:
        raise ValueError(f"Expected a positive index, got {i}")
    m, n = split(i, p)
    return n, m


def digit_sum(n: int, p: int) -> int:
    """ S_n, the sum of the base-p digits of n """
    return sum(digits(n, p)[1:])


def factorial_valuation(n: int, p: int) -> int:
    """ v_p(n!) = (n - S_n) / (p - 1), i.e. |n!| = omega^(n - S_n) """
    return (n - digit_sum(n, p)) // (p - 1)


def legendre_valuation(n: int, p: int) -> int:
    """ v_p(n!) by Legendre's formula, sum of floor(n / p^k) """
    total, pk = 0, p
    while pk <= n:
        total += n // pk
        pk *= p
    return total


def integer_log(n: int, p: int) -> int:
    """ l(n), the largest l with p^l <= n """
    if n < 1:
        raise ValueError(f"integer_log needs n >= 1, got {n}")
    return int(sympy.integer_log(n, p)[0])
