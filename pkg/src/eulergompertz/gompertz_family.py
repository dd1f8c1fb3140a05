"""Rational approximants to exp(x) E1(x), the Gompertz constant at x = 1.

The denominator has a hypergeometric closed form.  The numerator is read
off the Mellin-side identity

    sum_{k<n} F1[k] (s)_k + sum_{k<=n} F2[k] (s)_k / (s+k) = (1/n!) (1-s)_n^2 / (s)_{n+1}

by exact rational-function algebra in s: Euclidean division, residues at
s = 0, -1, ..., -n, removal of the pole parts, and a change of basis from
powers of s to rising factorials.  The F2 recovered on the way must equal
the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .euler_family import ApproximantPair, Family
from .exact_core import ConsistencyError, Polynomial, binomial


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("index n must be nonnegative")


@lru_cache(maxsize=512)
def gompertz_denominator(n: int) -> Polynomial:
    """``sum_l C(n,l) C(n+l,l)^2 x^l / l!``."""
    _check_n(n)
    return Polynomial(
        Fraction(binomial(n, l) * binomial(n + l, l) ** 2, math.factorial(l)) for l in range(n + 1)
    )


def _rising_poly(shift: int, length: int) -> list[int]:
    """Coefficients of ``(s + shift)_length`` in powers of s."""
    out = [1]
    for j in range(length):
        c = shift + j
        nxt = [0] * (len(out) + 1)
        for i, a in enumerate(out):
            nxt[i] += c * a
            nxt[i + 1] += a
        out = nxt
    return out


def _falling_one_minus(length: int) -> list[int]:
    """Coefficients of ``(1 - s)_length = prod_{j=1}^{length} (j - s)``."""
    out = [1]
    for j in range(1, length + 1):
        nxt = [0] * (len(out) + 1)
        for i, a in enumerate(out):
            nxt[i] += j * a
            nxt[i + 1] -= a
        out = nxt
    return out


def _exact_div(a: int, b: int) -> int | Fraction:
    q, r = divmod(a, b)
    return q if r == 0 else Fraction(a, b)


@dataclass(frozen=True)
class MellinRationalFunction:
    """``scale * numerator(s) / (s)_{n+1}`` with ``numerator = (1-s)_n^2``.

    ``numerator`` holds integer coefficients in powers of s; the poles are
    the simple zeros ``0, -1, ..., -n`` of the monic denominator.
    """

    n: int
    numerator: tuple[int, ...]
    scale: Fraction

    @classmethod
    def for_index(cls, n: int) -> "MellinRationalFunction":
        _check_n(n)
        half = _falling_one_minus(n)
        return cls(n, tuple(kernels.poly_mul(half, half)), Fraction(1, math.factorial(n)))

    def denominator(self) -> list[int]:
        return _rising_poly(0, self.n + 1)

    def split(self) -> tuple[list[int], list[int]]:
        """Polynomial part and remainder of ``numerator / (s)_{n+1}`` (unscaled)."""
        return kernels.divmod_monic(list(self.numerator), self.denominator())

    def residues(self, remainder: list[int]) -> list[int | Fraction]:
        """Unscaled residues at ``s = -k`` of ``remainder / (s)_{n+1}``."""
        n = self.n
        values = kernels.eval_at_nonpositive(remainder, n + 1)
        out = []
        for k, v in enumerate(values):
            # derivative of (s)_{n+1} at s = -k
            dk = (-1) ** k * math.factorial(k) * math.factorial(n - k)
            out.append(_exact_div(v, dk))
        return out


@dataclass(frozen=True)
class GompertzPipeline:
    """Intermediate products of the numerator extraction, scaled by n!."""

    n: int
    quotient: tuple[int, ...]
    residues: tuple[int | Fraction, ...]
    scaled_f2: tuple[int | Fraction, ...]
    scaled_poly_part: tuple[int | Fraction, ...]
    scaled_f1: tuple[int | Fraction, ...]


def _clear(values) -> tuple[list[int], int]:
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = math.lcm(den, v.denominator)
    return [int(v * den) for v in values], den


def run_pipeline(n: int) -> GompertzPipeline:
    _check_n(n)
    mellin = MellinRationalFunction.for_index(n)
    quotient, remainder = mellin.split()
    residues = mellin.residues(remainder)
    # (s)_k/(s+k) has residue (-1)^k k! at s = -k
    scaled_f2 = [
        _exact_div(r, (-1) ** k * math.factorial(k)) if isinstance(r, int) else r / ((-1) ** k * math.factorial(k))
        for k, r in enumerate(residues)
    ]
    weights, wden = _clear(scaled_f2)
    poles = kernels.pole_quotient_sum(weights)
    poly_part: list[int | Fraction] = list(quotient) + [0] * max(0, len(poles) - len(quotient))
    for i, c in enumerate(poles):
        poly_part[i] -= c if wden == 1 else Fraction(c, wden)
    ints, pden = _clear(poly_part)
    rising = kernels.monomial_to_rising(ints)
    scaled_f1 = [c if pden == 1 else Fraction(c, pden) for c in rising]
    return GompertzPipeline(
        n, tuple(quotient), tuple(residues), tuple(scaled_f2), tuple(poly_part), tuple(scaled_f1)
    )


@lru_cache(maxsize=512)
def gompertz_numerator(n: int) -> Polynomial:
    """Numerator polynomial (degree <= n - 1) extracted from the Mellin identity.

    Raises :class:`ConsistencyError` when the denominator recovered from the
    residues differs from :func:`gompertz_denominator`.
    """
    pipe = run_pipeline(n)
    nf = math.factorial(n)
    recovered = Polynomial(Fraction(c) / nf for c in pipe.scaled_f2)
    if recovered != gompertz_denominator(n):
        raise ConsistencyError(f"recovered denominator differs from the closed form at n={n}")
    return Polynomial(Fraction(c) / nf for c in pipe.scaled_f1)


def gompertz_pair(n: int) -> ApproximantPair:
    return ApproximantPair(Family.F_II, n, gompertz_numerator(n), gompertz_denominator(n))


@dataclass(frozen=True)
class IntegralityReport:
    n: int
    numerator_ok: bool
    denominator_ok: bool

    @property
    def ok(self) -> bool:
        return self.numerator_ok and self.denominator_ok


def gompertz_integrality_check(n: int) -> IntegralityReport:
    nf = math.factorial(n)
    return IntegralityReport(
        n,
        (gompertz_numerator(n) * nf).is_integral(),
        (gompertz_denominator(n) * nf).is_integral(),
    )
