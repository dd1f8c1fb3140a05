"""Reference values for gamma, ln x, E1(x) and exp(x) E1(x).

Every oracle returns a :class:`BigFloat` whose absolute error is at most
``2^(1 - precision_bits)``.  Two structurally different routes exist for
gamma (alternating series at a large integer argument, Brent-McMillan) and
for E1 (the same series, a Stieltjes continued fraction), so each can check
the other.

mpmath's global context is not thread safe; all evaluation runs under one
lock.  Parallel sweeps use processes instead of threads.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .exact_core import RationalLike

GAMMA_50_DIGITS = "0.57721566490153286060651209008240243104215933593992"

MIN_PRECISION_BITS = 64
MAX_WORKING_BITS = 1 << 18
CF_THRESHOLD = Fraction(64)

_LOG2E = 1.0 / math.log(2.0)
_lock = threading.RLock()


class PrecisionInfeasible(RuntimeError):
    """The requested accuracy needs more working precision than the cap allows."""


class ConstantKind(enum.Enum):
    GAMMA_PLUS_LN = "gamma+ln"
    EXP_E1 = "exp*E1"


@dataclass(frozen=True)
class ConstantId:
    """``gamma + ln x`` or ``exp(x) E1(x)`` at a positive rational x."""

    kind: ConstantKind
    x: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", Fraction(self.x))
        if self.x <= 0:
            raise ValueError("x must be positive")

    @classmethod
    def gamma_plus_ln(cls, x: RationalLike) -> "ConstantId":
        return cls(ConstantKind.GAMMA_PLUS_LN, Fraction(x))

    @classmethod
    def exp_e1(cls, x: RationalLike) -> "ConstantId":
        return cls(ConstantKind.EXP_E1, Fraction(x))

    def __str__(self) -> str:
        return f"{self.kind.value}({self.x})"


GAMMA = ConstantId(ConstantKind.GAMMA_PLUS_LN, Fraction(1))
DELTA = ConstantId(ConstantKind.EXP_E1, Fraction(1))


@dataclass(frozen=True)
class BigFloat:
    """A binary floating value with the promise ``|value - exact| <= 2^(1-precision_bits)``."""

    value: mpf
    precision_bits: int

    @property
    def error_bound(self) -> mpf:
        return mpmath.ldexp(mpf(1), 1 - self.precision_bits)

    def digits(self, n: int) -> str:
        with _lock, mpmath.workprec(self.precision_bits + 16):
            return mpmath.nstr(self.value, n, strip_zeros=False)

    def __float__(self) -> float:
        return float(self.value)


def _check_precision(p: int) -> None:
    if p < MIN_PRECISION_BITS:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION_BITS}")


def _check_cap(wp: int) -> None:
    if wp > MAX_WORKING_BITS:
        raise PrecisionInfeasible(f"working precision {wp} bits exceeds the cap of {MAX_WORKING_BITS}")


def series_guard_bits(x: RationalLike) -> int:
    """Extra bits that absorb the cancellation in ``sum (-1)^(k+1) x^k / (k k!)``."""
    return 64 + math.ceil(1.5 * float(x) * _LOG2E)


def _mpf_of(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def _fixed_alternating_series(x: Fraction, wp: int) -> int:
    """``round(2^wp * sum_{k>=1} (-1)^(k+1) x^k / (k k!))`` up to a few ulps, in integers."""
    a, b = x.numerator, x.denominator
    term = 1 << wp
    total = 0
    k = 0
    while True:
        k += 1
        term = term * a // (b * k)
        if term == 0:
            return total
        total += term // k if k & 1 else -(term // k)


def alternating_series_ref(x: RationalLike, precision_bits: int) -> BigFloat:
    """``sum_{k>=1} (-1)^(k+1) x^k / (k k!)`` to the contract accuracy."""
    _check_precision(precision_bits)
    x = Fraction(x)
    wp = precision_bits + 16 + max(0, int(x).bit_length())
    with _lock, mpmath.workprec(precision_bits):
        value = mpmath.ldexp(mpf(_fixed_alternating_series(x, wp)), -wp)
    return BigFloat(value, precision_bits)


def _ln_mpf(x: Fraction) -> mpf:
    if x.denominator == 1:
        return mpmath.log(x.numerator)
    return mpmath.log(x.numerator) - mpmath.log(x.denominator)


def ln_ref(x: RationalLike, precision_bits: int) -> BigFloat:
    _check_precision(precision_bits)
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    with _lock, mpmath.workprec(precision_bits + 32):
        value = _ln_mpf(x)
    with _lock, mpmath.workprec(precision_bits):
        return BigFloat(+value, precision_bits)


@lru_cache(maxsize=256)
def gamma_ref(precision_bits: int) -> BigFloat:
    """gamma from ``S(X) - ln X - E1(X)`` at an integer X with ``E1(X) < 2^(-p-8)``."""
    _check_precision(precision_bits)
    big_x = math.ceil((precision_bits + 8) * math.log(2.0)) + 1
    wp = precision_bits + series_guard_bits(big_x)
    _check_cap(wp)
    s = _fixed_alternating_series(Fraction(big_x), wp)
    with _lock, mpmath.workprec(wp):
        value = mpmath.ldexp(mpf(s), -wp) - mpmath.log(big_x)
    with _lock, mpmath.workprec(precision_bits):
        return BigFloat(+value, precision_bits)


@lru_cache(maxsize=64)
def gamma_ref_brent_mcmillan(precision_bits: int) -> BigFloat:
    """gamma as ``U/V`` with the Bessel-type sums of Brent and McMillan."""
    _check_precision(precision_bits)
    big_n = math.ceil((precision_bits + 8) * math.log(2.0) / 4) + 1
    wp = precision_bits + 64 + 3 * big_n
    _check_cap(wp)
    with _lock, mpmath.workprec(wp):
        n2 = mpf(big_n) ** 2
        a = -mpmath.log(big_n)
        b = mpf(1)
        u, v = a, b
        eps = mpmath.ldexp(mpf(1), -wp)
        k = 0
        while True:
            k += 1
            b = b * n2 / (k * k)
            a = (a * n2 / k + b) / k
            u += a
            v += b
            if k > big_n and b < eps * v and abs(a) < eps * abs(u):
                break
        value = u / v
    with _lock, mpmath.workprec(precision_bits):
        return BigFloat(+value, precision_bits)


def _exp_e1_cf(x: Fraction, rel_bits: int) -> mpf:
    """``exp(x) E1(x)`` from ``1/(x+ 1/(1+ 1/(x+ 2/(1+ 2/(x+ ...)))))``.

    Successive convergents of this Stieltjes fraction bracket the limit, so
    the step between them bounds the error.  Caller sets the precision.
    """
    xv = _mpf_of(x)
    # fundamental recurrences h_k = b_k h_{k-1} + a_k h_{k-2}, normalised each step
    p_prev, p_cur = mpf(1), mpf(0)
    q_prev, q_cur = mpf(0), mpf(1)
    prev = None
    k = 0
    while True:
        k += 1
        if k == 1:
            a, b = 1, xv
        elif k % 2 == 0:
            a, b = k // 2, 1
        else:
            a, b = k // 2, xv
        p_prev, p_cur = p_cur, b * p_cur + a * p_prev
        q_prev, q_cur = q_cur, b * q_cur + a * q_prev
        scale = q_cur
        p_prev, p_cur, q_prev, q_cur = p_prev / scale, p_cur / scale, q_prev / scale, 1
        h = p_cur
        if prev is not None and abs(h - prev) <= mpmath.ldexp(h, -rel_bits):
            return h
        prev = h
        if k > 4 * MAX_WORKING_BITS**2:
            raise PrecisionInfeasible("continued fraction failed to converge")


def _e1_method(x: Fraction, method: str) -> str:
    if method == "auto":
        return "cf" if x >= CF_THRESHOLD else "series"
    if method not in ("series", "cf"):
        raise ValueError(f"unknown E1 method {method!r}")
    return method


@lru_cache(maxsize=1024)
def _e1_cached(x: Fraction, precision_bits: int, method: str) -> BigFloat:
    if method == "series":
        wp = precision_bits + series_guard_bits(x)
        _check_cap(wp)
        s = _fixed_alternating_series(x, wp + 8)
        g = gamma_ref(wp).value
        with _lock, mpmath.workprec(wp):
            value = mpmath.ldexp(mpf(s), -(wp + 8)) - g - _ln_mpf(x)
    else:
        wp = precision_bits + 32
        _check_cap(wp)
        with _lock, mpmath.workprec(wp):
            value = mpmath.exp(-_mpf_of(x)) * _exp_e1_cf(x, precision_bits + 8)
    with _lock, mpmath.workprec(precision_bits):
        return BigFloat(+value, precision_bits)


def e1_ref(x: RationalLike, precision_bits: int, method: str = "auto") -> BigFloat:
    """E1(x); ``method`` is ``"series"``, ``"cf"`` or ``"auto"`` (cf from x >= 64)."""
    _check_precision(precision_bits)
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    return _e1_cached(x, precision_bits, _e1_method(x, method))


@lru_cache(maxsize=1024)
def _exp_e1_cached(x: Fraction, precision_bits: int, method: str) -> BigFloat:
    if method == "cf":
        wp = precision_bits + 32
        _check_cap(wp)
        with _lock, mpmath.workprec(wp):
            value = _exp_e1_cf(x, precision_bits + 8)
    else:
        # exp(x) <= 2^(x log2 e) magnifies the absolute error of E1
        extra = math.ceil(float(x) * _LOG2E) + 8
        e1 = _e1_cached(x, precision_bits + extra, "series").value
        with _lock, mpmath.workprec(precision_bits + extra):
            value = mpmath.exp(_mpf_of(x)) * e1
    with _lock, mpmath.workprec(precision_bits):
        return BigFloat(+value, precision_bits)


def exp_e1_ref(x: RationalLike, precision_bits: int, method: str = "auto") -> BigFloat:
    """``exp(x) E1(x)``; at x = 1 this is the Gompertz constant."""
    _check_precision(precision_bits)
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    return _exp_e1_cached(x, precision_bits, _e1_method(x, method))


@lru_cache(maxsize=1024)
def constant_ref(constant: ConstantId, precision_bits: int) -> BigFloat:
    _check_precision(precision_bits)
    if constant.kind is ConstantKind.EXP_E1:
        return exp_e1_ref(constant.x, precision_bits)
    g = gamma_ref(precision_bits + 4).value
    if constant.x == 1:
        value = g
    else:
        ln = ln_ref(constant.x, precision_bits + 4).value
        with _lock, mpmath.workprec(precision_bits + 8):
            value = g + ln
    with _lock, mpmath.workprec(precision_bits):
        return BigFloat(+value, precision_bits)


# -- linear forms -------------------------------------------------------------

SIGNIFICANT_BITS = 16
PRECISION_GRID = 512


@dataclass(frozen=True)
class LinearFormQuality:
    """``abs_error = |Q c - P|``; ``r_measured = -ln(abs_error) / ln Q`` (None when ln Q = 0)."""

    abs_error: mpf
    log_error: float
    log_q: float
    r_measured: float | None
    precision_bits: int


def _log_abs_rational(q: Fraction) -> float:
    with _lock, mpmath.workprec(64):
        return float(_ln_mpf(abs(q)))


def linear_form_quality(P: RationalLike, Q: RationalLike, c: ConstantId, precision_bits: int = 256) -> LinearFormQuality:
    """Measure ``|Q c - P|`` with enough working precision for 16 significant bits.

    Precision is raised until ``|Q c - P|`` exceeds its own error bound
    ``Q 2^(1-p)`` by a factor ``2^16``.
    """
    _check_precision(precision_bits)
    P, Q = Fraction(P), Fraction(Q)
    if Q <= 0:
        raise ValueError("Q must be positive")
    q_bits = max(1, Q.numerator.bit_length() - Q.denominator.bit_length() + 1)
    p = precision_bits + q_bits
    while True:
        # snap to a coarse grid so sweeps over n share cached constants
        p = -(-p // PRECISION_GRID) * PRECISION_GRID
        _check_cap(p)
        cval = constant_ref(c, p).value
        with _lock, mpmath.workprec(p + 8):
            err = abs(_mpf_of(Q) * cval - _mpf_of(P))
            ok = err > 0 and mpmath.log(err, 2) > q_bits + 1 - p + SIGNIFICANT_BITS
        if ok:
            break
        if err > 0:
            with _lock, mpmath.workprec(64):
                short = int(q_bits + 1 - p + SIGNIFICANT_BITS - float(mpmath.log(err, 2))) + 32
            p += max(short, 64)
        else:
            p *= 2
    with _lock, mpmath.workprec(64):
        log_error = float(mpmath.log(err))
    log_q = _log_abs_rational(Q)
    r = None if log_q == 0 else -log_error / log_q
    with _lock, mpmath.workprec(p):
        err = +err
    return LinearFormQuality(err, log_error, log_q, r, p)
