"""Five-term recurrences at x = 1 and the asymptotic growth models.

The coefficient tables live in ``data/recurrences.json``; each entry keeps
the printed factored form next to its expansion so a data-entry slip shows
up as a mismatch between the two.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .exact_core import Polynomial, RationalLike

RECURRENCE_FAMILIES = ("euler", "gompertz")
LIMIT_CHARACTERISTIC = (-729, 2916, -4374, 2916, -729)


@dataclass(frozen=True)
class RecurrenceSpec:
    """``sum_{k=0}^{4} c_{n,k} S_{n+k} = 0`` with ``c_{n,k}`` integer polynomials in n."""

    family_tag: str
    coefficient_polys: tuple[Polynomial, ...]
    factored: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return len(self.coefficient_polys) - 1

    def coefficients_at(self, n: int) -> list[int]:
        return [c(n).numerator for c in self.coefficient_polys]


def _ints(strings: Sequence[str]) -> list[int]:
    return [int(s) for s in strings]


def _expand_factors(sign: int, factors: list[dict]) -> Polynomial:
    out = Polynomial([sign])
    for f in factors:
        base = Polynomial(_ints(f["poly"]))
        for _ in range(int(f["power"])):
            out = out * base
    return out


@lru_cache(maxsize=None)
def _raw_table() -> dict:
    text = resources.files("eulergompertz").joinpath("data/recurrences.json").read_text("utf-8")
    return json.loads(text)


def recurrence_table_entries(family: str) -> list[dict]:
    try:
        return _raw_table()["families"][family]
    except KeyError:
        raise ValueError(f"no recurrence table for family {family!r}") from None


def factored_expansion(family: str) -> list[Polynomial]:
    """The structured factored forms multiplied out (for the integrity check)."""
    return [_expand_factors(e["sign"], e["factors"]) for e in recurrence_table_entries(family)]


@lru_cache(maxsize=None)
def load_recurrence(family: str) -> RecurrenceSpec:
    entries = recurrence_table_entries(family)
    polys = tuple(Polynomial(_ints(e["expanded"])) for e in entries)
    return RecurrenceSpec(family, polys, tuple(e["factored"] for e in entries))


def recurrence_residual(spec: RecurrenceSpec, values: Sequence[RationalLike], n: int) -> Fraction:
    """``sum_k c_{n,k} values[k]``; exactly zero when ``values`` solve the recurrence."""
    if len(values) != len(spec.coefficient_polys):
        raise ValueError(f"expected {len(spec.coefficient_polys)} consecutive terms, got {len(values)}")
    total = Fraction(0)
    for c, v in zip(spec.coefficients_at(n), values):
        total += c * Fraction(v)
    return total


def characteristic_limit_check(spec: RecurrenceSpec, n: int, limit: Sequence[int] = LIMIT_CHARACTERISTIC) -> float:
    """Max over k of ``|c_{n,k} / (n^d * limit_k) - 1|`` with d the common degree."""
    degree = max(c.degree for c in spec.coefficient_polys)
    scale = n**degree
    worst = Fraction(0)
    for c, target in zip(spec.coefficients_at(n), limit):
        worst = max(worst, abs(Fraction(c, scale * target) - 1))
    return float(worst)


# -- asymptotic models -------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticModel:
    """``power_of_n * ln n + sum_j coeff_j(omega) * n^{e_j}`` with ``omega = x^(1/root_degree)``.

    Each coefficient is a polynomial in omega.  Only the real positive branch
    of the root is used for evaluation.
    """

    name: str
    x: Fraction
    power_of_n: Fraction
    exponent_terms: tuple[tuple[Fraction, Polynomial], ...]
    root_degree: int = 4

    @property
    def omega(self) -> float:
        return float(self.x) ** (1.0 / self.root_degree)

    def predicted_log(self, n: float) -> float:
        if n <= 0:
            raise ValueError("n must be positive")
        w = self.omega
        total = float(self.power_of_n) * math.log(n)
        for e, coeff in self.exponent_terms:
            cw = sum(float(c) * w**k for k, c in enumerate(coeff.coeffs))
            total += cw * n ** float(e)
        return total


def predicted_log(model: AsymptoticModel, n: float) -> float:
    return model.predicted_log(n)


_E34, _E12, _E14 = Fraction(3, 4), Fraction(1, 2), Fraction(1, 4)


def _bt_model(name: str, x: RationalLike, power: Fraction, c1: Fraction, c2: Fraction, c3: Fraction) -> AsymptoticModel:
    terms = (
        (_E34, Polynomial.monomial(1, c1)),
        (_E12, Polynomial.monomial(2, c2)),
        (_E14, Polynomial.monomial(3, c3)),
    )
    return AsymptoticModel(name, Fraction(x), power, terms)


def euler_denominator_model(x: RationalLike = 1) -> AsymptoticModel:
    return _bt_model("euler-denominator", x, Fraction(-9, 8), Fraction(4), Fraction(-1, 2), Fraction(-3, 8))


def gompertz_denominator_model(x: RationalLike = 1) -> AsymptoticModel:
    return _bt_model("gompertz-denominator", x, Fraction(-9, 8), Fraction(4), Fraction(1, 2), Fraction(-3, 8))


def euler_error_model(x: RationalLike = 1) -> AsymptoticModel:
    """Predicted ``ln|gamma + ln x - F1/F2|`` (sign-flipped convention: value is negative)."""
    return _bt_model("euler-error", x, Fraction(0), Fraction(-4), Fraction(1), Fraction(3, 8))


def gompertz_error_model(x: RationalLike = 1) -> AsymptoticModel:
    return _bt_model("gompertz-error", x, Fraction(0), Fraction(-4), Fraction(-1), Fraction(3, 8))


def _cos_factor(a: int) -> float:
    return a * (1.0 - math.cos(2.0 * math.pi / a))


def p_family_error_model(p: int, x: RationalLike = 1) -> AsymptoticModel:
    """Leading term only: ``-(p+3)(1 - cos(2 pi/(p+3))) x^(1/(p+3)) n^((p+2)/(p+3))``.

    At p = 1 this is the leading term of :func:`euler_error_model`; other p
    extrapolate the same pattern and carry no lower-order corrections.
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    a = p + 3
    coeff = Polynomial.monomial(1, Fraction(-_cos_factor(a)).limit_denominator(10**15))
    return AsymptoticModel(f"euler-p{p}-error", Fraction(x), Fraction(0), ((Fraction(a - 1, a), coeff),), root_degree=a)


def pilehrood_error_model(a: int) -> AsymptoticModel:
    """``-a (1 - cos(2 pi / a)) n^((a-1)/a)``, leading term only, at x = 1."""
    if a < 1:
        raise ValueError("a must be >= 1")
    coeff = Polynomial([Fraction(-_cos_factor(a)).limit_denominator(10**15)])
    return AsymptoticModel(f"pilehrood-a{a}-error", Fraction(1), Fraction(0), ((Fraction(a - 1, a), coeff),), root_degree=1)


@dataclass(frozen=True)
class DriftReport:
    constants: tuple[tuple[int, float], ...]
    drifts: tuple[tuple[int, int, float], ...]

    @property
    def max_drift(self) -> float:
        return max((d for _, _, d in self.drifts), default=0.0)


def drift_report(observed: Sequence[tuple[int, float]], model: AsymptoticModel) -> DriftReport:
    """``C_n = observed_n - predicted_log(n)`` and ``|C_{2m} - C_m|`` for every doubled pair present."""
    consts = {n: value - model.predicted_log(n) for n, value in observed}
    drifts = tuple((m, 2 * m, abs(consts[2 * m] - consts[m])) for m in sorted(consts) if 2 * m in consts)
    return DriftReport(tuple(sorted(consts.items())), drifts)
