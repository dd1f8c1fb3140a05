"""Exact scalars, dense polynomials and log-linear forms.

Everything here is immutable and exact.  Rational scalars are
:class:`fractions.Fraction` (always in lowest terms with a positive
denominator); :class:`Polynomial` stores them densely, lowest power first.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

ExactRational = Fraction
RationalLike = Union[int, Fraction]


class ConsistencyError(RuntimeError):
    """An exact identity that must hold by construction was violated."""


# -- combinatorics ---------------------------------------------------------

_memo_lock = threading.Lock()
_harmonic_table: list[Fraction] = [Fraction(0)]
_lcm_table: list[int] = [1, 1]


def harmonic(l: int) -> Fraction:
    """H_l = 1 + 1/2 + ... + 1/l, with H_0 = 0."""
    if l < 0:
        raise ValueError("harmonic number index must be nonnegative")
    table = _harmonic_table
    if l >= len(table):
        with _memo_lock:
            while len(table) <= l:
                table.append(table[-1] + Fraction(1, len(table)))
    return table[l]


def lcm_upto(n: int) -> int:
    """lcm(1, ..., n); equals 1 for n <= 1."""
    if n < 0:
        raise ValueError("lcm_upto expects n >= 0")
    table = _lcm_table
    if n >= len(table):
        with _memo_lock:
            while len(table) <= n:
                table.append(math.lcm(table[-1], len(table)))
    return table[n]


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


# -- polynomials ----------------------------------------------------------


class Polynomial:
    """Dense univariate polynomial over the rationals.

    ``coeffs[k]`` is the coefficient of ``x**k``.  Trailing zeros are
    stripped, so the zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def _trusted(cls, coeffs: Sequence[Fraction]) -> "Polynomial":
        # coefficients already Fractions; only strip
        obj = cls.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        obj._coeffs = tuple(cs)
        return obj

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> "Polynomial":
        return cls([0] * k + [c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Polynomial([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        return format_polynomial(self)

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted([-c for c in self._coeffs])

    def __add__(self, other: "Polynomial | RationalLike") -> "Polynomial":
        other = _coerce(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._trusted(out)

    __radd__ = __add__

    def __sub__(self, other: "Polynomial | RationalLike") -> "Polynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: RationalLike) -> "Polynomial":
        return _coerce(other) - self

    def __mul__(self, other: "Polynomial | RationalLike") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial()
            return Polynomial._trusted([c * other for c in self._coeffs])
        other = _coerce(other)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial._trusted(out)

    __rmul__ = __mul__

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval_exact(self, x)

    def derivative(self) -> "Polynomial":
        return Polynomial._trusted([k * c for k, c in enumerate(self._coeffs)][1:])

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``x**k``."""
        if not self._coeffs:
            return self
        return Polynomial._trusted([Fraction(0)] * k + list(self._coeffs))

    def divide_by_x(self) -> "Polynomial":
        """Exact division by ``x``; a nonzero constant term is a bug upstream."""
        if self._coeffs and self._coeffs[0] != 0:
            raise ConsistencyError("division by x left a remainder")
        return Polynomial._trusted(self._coeffs[1:])

    def common_denominator(self) -> int:
        den = 1
        for c in self._coeffs:
            den = math.lcm(den, c.denominator)
        return den

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def integer_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [c.numerator for c in self._coeffs]


def _coerce(value: "Polynomial | RationalLike") -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial([value])


def poly_eval_exact(p: Polynomial, x: RationalLike) -> Fraction:
    """Horner evaluation in exact arithmetic.

    Rational points are handled with a single division at the end:
    ``p(a/b) = (sum c_k a^k b^(d-k)) / b^d``.
    """
    x = _as_fraction(x)
    cs = p.coeffs
    if not cs:
        return Fraction(0)
    den = p.common_denominator()
    ints = [c.numerator * (den // c.denominator) for c in cs]
    a, b = x.numerator, x.denominator
    acc = 0
    bpow = 1
    for c in reversed(ints):
        acc = acc * a + c * bpow
        bpow *= b
    # bpow == b**(deg + 1) here, one factor too many
    return Fraction(acc, den * (bpow // b))


def format_polynomial(p: Polynomial, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# -- log-linear forms -------------------------------------------------------


class ConstantTag(enum.Enum):
    EULER_GAMMA = "gamma"
    NONE = "none"


@dataclass(frozen=True)
class LogLinearForm:
    """``A(x) + B(x) * (c + ln x)`` with ``c`` = Euler's gamma or 0."""

    rational_part: Polynomial
    log_part: Polynomial
    constant_tag: ConstantTag = ConstantTag.EULER_GAMMA

    def derivative(self) -> "LogLinearForm":
        # (P + Q L)' = P' + Q/x + Q' L  with  L = c + ln x
        a, b = self.rational_part, self.log_part
        return LogLinearForm(a.derivative() + b.divide_by_x(), b.derivative(), self.constant_tag)

    def shift(self, k: int) -> "LogLinearForm":
        return LogLinearForm(self.rational_part.shift(k), self.log_part.shift(k), self.constant_tag)

    def scale(self, c: RationalLike) -> "LogLinearForm":
        return LogLinearForm(self.rational_part * c, self.log_part * c, self.constant_tag)


def _int_derivative(cs: list[int]) -> list[int]:
    return [k * c for k, c in enumerate(cs)][1:]


def rodrigues_step(f: LogLinearForm, m: int) -> LogLinearForm:
    """``(1/m!) d^m/dx^m [x^m f(x)]`` as m single-derivative passes.

    Denominators are cleared once up front (the operator is linear), the m
    passes run on integer coefficient lists and the result is rescaled.
    """
    if m < 0:
        raise ValueError("rodrigues_step expects m >= 0")
    if m == 0:
        return f
    den = math.lcm(f.rational_part.common_denominator(), f.log_part.common_denominator())
    a = [int(c * den) for c in f.rational_part.shift(m).coeffs]
    b = [int(c * den) for c in f.log_part.shift(m).coeffs]
    for _ in range(m):
        if b and b[0] != 0:
            raise ConsistencyError("division by x left a remainder")
        da = _int_derivative(a)
        quot = b[1:]
        if len(da) < len(quot):
            da, quot = quot, da
        a = list(da)
        for i, c in enumerate(quot):
            a[i] += c
        b = _int_derivative(b)
    scale = den * math.factorial(m)
    return LogLinearForm(
        Polynomial._trusted([Fraction(c, scale) for c in a]),
        Polynomial._trusted([Fraction(c, scale) for c in b]),
        f.constant_tag,
    )
