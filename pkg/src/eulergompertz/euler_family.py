"""Rational approximants to gamma + ln x.

Four families share the shape ``F1(x) + F2(x) (gamma + ln x)`` being small,
so that ``-F1(x)/F2(x)`` approximates ``gamma + ln x``:

* ``L_I``   type I multiple Laguerre functions of the first kind,
* ``F_I``   the mixed type functions, one Rodrigues step above ``L_I``,
* ``F_I_P`` the p-fold Rodrigues family (p=0 is ``L_I``, p=1 is ``F_I``),
* ``PILEHROOD`` the scalar baseline ``(P, Q)`` with ``P/Q -> gamma``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_core import (
    ConstantTag,
    LogLinearForm,
    Polynomial,
    RationalLike,
    binomial,
    harmonic,
    lcm_upto,
    rodrigues_step,
)


class Family(str, enum.Enum):
    L_I = "L_I"
    F_I = "F_I"
    F_I_P = "F_I_P"
    PILEHROOD = "PILEHROOD"
    F_II = "F_II"


@dataclass(frozen=True)
class ApproximantPair:
    """Numerator ``F1`` and denominator ``F2`` of one family member.

    For every family the small quantity is ``F1(x) + F2(x) * c(x)``; the
    approximation to ``c(x)`` is ``-F1(x) / F2(x)``.  ``parameter`` is ``p``
    for ``F_I_P`` and ``a`` for ``PILEHROOD``.
    """

    family: Family
    index_n: int
    numerator: Polynomial
    denominator: Polynomial
    parameter: int | None = None

    def evaluate(self, x: RationalLike) -> tuple[Fraction, Fraction]:
        return self.numerator(x), self.denominator(x)

    def ratio(self, x: RationalLike = 1) -> Fraction:
        f1, f2 = self.evaluate(x)
        return -f1 / f2

    def as_form(self) -> LogLinearForm:
        return LogLinearForm(self.numerator, self.denominator, ConstantTag.EULER_GAMMA)


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("index n must be nonnegative")


@lru_cache(maxsize=512)
def laguerre1_typeI(n: int) -> ApproximantPair:
    _check_n(n)
    num, den = [], []
    for k in range(n + 1):
        b = Fraction(binomial(n, k) ** 2, math.factorial(k))
        den.append(b)
        num.append(b * (-3 * harmonic(k) + 2 * harmonic(n - k)))
    return ApproximantPair(Family.L_I, n, Polynomial(num), Polynomial(den))


def _alternating_binomial_sum(n: int, k: int, scale: int) -> int:
    """``scale * sum_{l=1}^n C(n+k, n-l) (-1)^l / l`` for ``scale`` divisible by lcm(1..n)."""
    total = 0
    top = n + k
    c = binomial(top, n - 1)
    for l in range(1, n + 1):
        # c == C(n+k, n-l)
        term = c * (scale // l)
        total += -term if l & 1 else term
        m = n - l
        if m > 0:
            c = c * m // (top - m + 1)
    return total


@lru_cache(maxsize=512)
def euler_mixed(n: int) -> ApproximantPair:
    """Mixed type approximants from the double-sum closed form."""
    _check_n(n)
    lcm = lcm_upto(n)
    scaled_h = [(harmonic(j) * lcm).numerator for j in range(n + 1)]
    num, den = [], []
    for k in range(n + 1):
        c2 = binomial(n, k) ** 2
        a = c2 * binomial(n + k, k)
        fk = math.factorial(k)
        den.append(Fraction(a, fk))
        bracket = -3 * scaled_h[k] + 2 * scaled_h[n - k]
        inner = _alternating_binomial_sum(n, k, lcm)
        num.append(Fraction(a * bracket - c2 * inner, lcm * fk))
    return ApproximantPair(Family.F_I, n, Polynomial(num), Polynomial(den))


def euler_p_family(n: int, p: int) -> ApproximantPair:
    """p-fold Rodrigues family from its residue expansion.

    Denominator ``b_k = C(n,k)^2 C(n+k,k)^p / k!``; numerator
    ``b_k [p (H_{n+k} - H_k) - 3 H_k + 2 H_{n-k}]``, the log-derivative of the
    integrand at its double pole ``t = k``.
    """
    _check_n(n)
    if p < 0:
        raise ValueError("p must be nonnegative")
    return _euler_p_family(n, p)


@lru_cache(maxsize=512)
def _euler_p_family(n: int, p: int) -> ApproximantPair:
    num, den = [], []
    for k in range(n + 1):
        b = Fraction(binomial(n, k) ** 2 * binomial(n + k, k) ** p, math.factorial(k))
        hk = harmonic(k)
        bracket = p * (harmonic(n + k) - hk) - 3 * hk + 2 * harmonic(n - k)
        den.append(b)
        num.append(b * bracket)
    return ApproximantPair(Family.F_I_P, n, Polynomial(num), Polynomial(den), parameter=p)


def euler_p_family_values(n: int, p: int, x: RationalLike = 1) -> tuple[Fraction, Fraction]:
    """``(F1(x), F2(x))`` of the p-family without building the polynomials.

    Everything is scaled by ``M = lcm(1..2n)`` and ``n!`` so the sum over k
    runs on integers; one division at the end.
    """
    _check_n(n)
    if p < 0:
        raise ValueError("p must be nonnegative")
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    big_m = lcm_upto(2 * n)
    h = [0] * (2 * n + 1)
    for j in range(1, 2 * n + 1):
        h[j] = h[j - 1] + big_m // j
    nf = math.factorial(n)
    num = den = 0
    # w_k = C(n,k)^2 C(n+k,k)^p (n!/k!) a^k b^(n-k), updated by small factors
    w = nf * b**n
    for k in range(n + 1):
        if k:
            w = w * ((n - k + 1) ** 2 * (n + k) ** p * a) // (k ** (p + 3) * b)
        den += w
        num += w * (p * (h[n + k] - h[k]) - 3 * h[k] + 2 * h[n - k])
    scale = nf * b**n
    return Fraction(num, scale * big_m), Fraction(den, scale)


def euler_p_family_rodrigues(n: int, p: int) -> ApproximantPair:
    """Same family, built by applying the Rodrigues step p times to ``L_I``."""
    _check_n(n)
    form = laguerre1_typeI(n).as_form()
    for _ in range(p):
        form = rodrigues_step(form, n)
    return ApproximantPair(Family.F_I_P, n, form.rational_part, form.log_part, parameter=p)


def pilehrood_baseline(n: int, a: int) -> tuple[Fraction, Fraction]:
    """``(P, Q)`` with ``Q = sum C(n,k)^a k!`` and ``P/Q -> gamma``."""
    _check_n(n)
    if a < 1:
        raise ValueError("a must be >= 1")
    q = 0
    p = Fraction(0)
    for k in range(n + 1):
        w = binomial(n, k) ** a * math.factorial(k)
        q += w
        p += w * (a * harmonic(n - k) - (a - 1) * harmonic(k))
    return p, Fraction(q)


def pilehrood_pair(n: int, a: int) -> ApproximantPair:
    p, q = pilehrood_baseline(n, a)
    return ApproximantPair(Family.PILEHROOD, n, Polynomial([-p]), Polynomial([q]), parameter=a)


@dataclass(frozen=True)
class ScalerReport:
    denominator_scaler_ok: bool
    numerator_scaler_ok: bool
    minimal_numerator_multiplier: int


def diophantine_scaler_check(pair: ApproximantPair) -> ScalerReport:
    """Check ``n! F2`` and ``n! lcm(1..n) F1`` for integrality.

    Also reports the least ``M >= 1`` with ``M n! F1`` integral, which must
    divide ``lcm(1..n)`` whenever the numerator check passes.
    """
    if pair.family not in (Family.L_I, Family.F_I, Family.F_I_P):
        raise ValueError(f"scaler check is defined for the gamma families, not {pair.family.value}")
    n = pair.index_n
    nf = math.factorial(n)
    den_ok = (pair.denominator * nf).is_integral()
    scaled = pair.numerator * nf
    return ScalerReport(
        denominator_scaler_ok=den_ok,
        numerator_scaler_ok=(scaled * lcm_upto(n)).is_integral(),
        minimal_numerator_multiplier=scaled.common_denominator(),
    )
