"""Type II multiple Laguerre polynomials and the classical comparator.

``L_(n1,n2)(x) = (-1)^(n1+n2) e^x D^n1 [x^n1 D^n2 [x^n2 e^-x]]``.

The exponential is carried implicitly: a pair ``q(x) e^-x`` differentiates to
``(q' - q) e^-x``, so all work happens on integer coefficient lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_core import Polynomial, RationalLike, binomial


def _d_exp(q: list[int]) -> list[int]:
    """Coefficients of p with ``D[q e^-x] = p e^-x``."""
    out = [-c for c in q]
    for k in range(1, len(q)):
        out[k - 1] += k * q[k]
    return out


@dataclass(frozen=True)
class TypeIIPolynomial:
    n1: int
    n2: int
    poly: Polynomial

    def __post_init__(self) -> None:
        if self.poly.degree != self.n1 + self.n2 or not self.poly.is_integral():
            raise ValueError("type II polynomial must have integer coefficients and degree n1 + n2")


@lru_cache(maxsize=1024)
def _typeII_coeffs(n1: int, n2: int) -> tuple[int, ...]:
    q = [0] * n2 + [1]
    for _ in range(n2):
        q = _d_exp(q)
    q = [0] * n1 + q
    for _ in range(n1):
        q = _d_exp(q)
    if (n1 + n2) & 1:
        q = [-c for c in q]
    return tuple(q)


def typeII_laguerre(n1: int, n2: int) -> TypeIIPolynomial:
    if n1 < 0 or n2 < 0:
        raise ValueError("multi-index entries must be nonnegative")
    return TypeIIPolynomial(n1, n2, Polynomial(_typeII_coeffs(n1, n2)))


def four_term_check(n: int) -> Polynomial:
    """Residual of the step-line recurrence at index n; zero when it holds.

    ``x L_(n+1,n) - L_(n+1,n+1) - b_n L_(n+1,n) - c_n L_(n,n) - d_n L_(n,n-1)``
    with ``b_n = 3n+2``, ``c_n = 3n^2+3n+1``, ``d_n = n^3``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    b, c, d = 3 * n + 2, 3 * n * n + 3 * n + 1, n**3
    upper = typeII_laguerre(n + 1, n).poly
    res = upper.shift(1) - typeII_laguerre(n + 1, n + 1).poly - upper * b
    res -= typeII_laguerre(n, n).poly * c
    if d:
        res -= typeII_laguerre(n, n - 1).poly * d
    return res


def classical_laguerre_neg(n: int, x: RationalLike) -> Fraction:
    """``L_n(-x) = sum_k C(n,k) x^k / k!``, exactly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Polynomial(Fraction(binomial(n, k), math.factorial(k)) for k in range(n + 1))(x)


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def perron_constant(n: int) -> float:
    """``ln L_n(-1) + ln(n)/4 - 2 sqrt(n)``; tends to a constant for large n."""
    if n < 1:
        raise ValueError("n must be positive")
    return _log_fraction(classical_laguerre_neg(n, 1)) + 0.25 * math.log(n) - 2.0 * math.sqrt(n)
