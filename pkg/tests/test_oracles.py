from fractions import Fraction

import mpmath
import pytest

from eulergompertz import oracles
from eulergompertz.oracles import (
    DELTA,
    GAMMA,
    GAMMA_50_DIGITS,
    ConstantId,
    ConstantKind,
    PrecisionInfeasible,
    alternating_series_ref,
    constant_ref,
    e1_ref,
    exp_e1_ref,
    gamma_ref,
    gamma_ref_brent_mcmillan,
    linear_form_quality,
    ln_ref,
    series_guard_bits,
)


def _close(a, b, bits):
    with mpmath.workprec(bits + 64):
        return abs(a - b) <= mpmath.ldexp(mpmath.mpf(1), -bits)


def test_constant_ids():
    assert GAMMA == ConstantId.gamma_plus_ln(1)
    assert DELTA == ConstantId.exp_e1(1)
    assert GAMMA.kind is ConstantKind.GAMMA_PLUS_LN
    with pytest.raises(ValueError):
        ConstantId.exp_e1(0)


def test_gamma_first_digits():
    assert gamma_ref(64).digits(19) == "0.5772156649015328606"


def test_gamma_fifty_digits_by_both_methods():
    assert gamma_ref(200).digits(50) == GAMMA_50_DIGITS
    assert gamma_ref_brent_mcmillan(200).digits(50) == GAMMA_50_DIGITS


@pytest.mark.parametrize("p", [64, 256, 1024])
def test_two_gamma_methods_agree(p):
    assert _close(gamma_ref(p).value, gamma_ref_brent_mcmillan(p).value, p - 4)


@pytest.mark.parametrize("p", [64, 256, 1024])
def test_precision_ladder(p):
    assert _close(gamma_ref(p).value, gamma_ref(2 * p).value, p - 4)
    assert _close(e1_ref(3, p).value, e1_ref(3, 2 * p).value, p - 4)
    assert _close(exp_e1_ref(1, p).value, exp_e1_ref(1, 2 * p).value, p - 4)
    assert _close(ln_ref(Fraction(7, 3), p).value, ln_ref(Fraction(7, 3), 2 * p).value, p - 4)


def test_gamma_against_mpmath():
    with mpmath.workprec(600):
        assert abs(gamma_ref(512).value - mpmath.euler) <= gamma_ref(512).error_bound


def test_rounded_consistency():
    with mpmath.workprec(64):
        assert abs(+gamma_ref(128).value - gamma_ref(64).value) <= mpmath.ldexp(1, -60)


@pytest.mark.parametrize("x", [1, 2, 5])
@pytest.mark.parametrize("p", [64, 256])
def test_series_identity_closes(x, p):
    # E1 from the continued fraction so the identity is not circular
    g, ln, e1 = gamma_ref(p + 8).value, ln_ref(x, p + 8).value, e1_ref(x, p + 8, method="cf").value
    s = alternating_series_ref(x, p + 8).value
    with mpmath.workprec(p + 64):
        assert abs(g + ln + e1 - s) <= mpmath.ldexp(1, 4 - p)


@pytest.mark.parametrize("x", [Fraction(1, 3), 1, 7, 20, 64, 200])
def test_e1_methods_agree_with_mpmath(x):
    for method in ("series", "cf"):
        v = e1_ref(x, 256, method=method)
        with mpmath.workprec(400):
            ref = mpmath.e1(mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator)
            assert abs(v.value - ref) <= v.error_bound


def test_e1_spot_values():
    assert e1_ref(1, 64).digits(16) == "0.2193839343955203"
    with mpmath.workprec(64):
        assert e1_ref(20, 128).value < mpmath.exp(-20) / 20
    assert exp_e1_ref(1, 64).digits(10) == "0.5963473623"


def test_guard_policy():
    assert series_guard_bits(0) == 64
    assert series_guard_bits(10) == 64 + 22


def test_precision_floor_and_cap(monkeypatch):
    with pytest.raises(ValueError):
        gamma_ref(32)
    monkeypatch.setattr(oracles, "MAX_WORKING_BITS", 300)
    oracles.gamma_ref.cache_clear()
    with pytest.raises(PrecisionInfeasible):
        gamma_ref(512)
    oracles.gamma_ref.cache_clear()


def test_invalid_arguments():
    with pytest.raises(ValueError):
        e1_ref(0, 64)
    with pytest.raises(ValueError):
        e1_ref(1, 64, method="quadrature")
    with pytest.raises(ValueError):
        linear_form_quality(1, 0, GAMMA)


def test_linear_form_examples():
    q = linear_form_quality(2, 3, GAMMA, 64)
    assert float(q.abs_error) == pytest.approx(0.268353005295401, rel=1e-9)
    assert float(q.abs_error) / 3 == pytest.approx(8.9451e-2, abs=1e-6)
    q = linear_form_quality(0, 1, GAMMA, 64)
    assert float(q.abs_error) == pytest.approx(0.5772156649015329, rel=1e-12)
    assert q.r_measured is None
    q = linear_form_quality(3, 5, DELTA, 64)
    assert float(q.abs_error) == pytest.approx(1.826e-2, abs=1e-5)
    assert float(q.abs_error) / 5 == pytest.approx(3.65e-3, abs=1e-5)
    q = linear_form_quality(4, 7, GAMMA, 64)
    assert float(q.abs_error) == pytest.approx(4.05e-2, abs=1e-4)


def test_linear_form_raises_precision_for_tiny_errors():
    # P/Q a 400-bit approximation of gamma: needs far more than 64 bits
    with mpmath.workprec(800):
        Q = 1 << 400
        P = int(mpmath.nint(mpmath.euler * Q))
    q = linear_form_quality(P, Q, GAMMA, 64)
    assert q.precision_bits > 400
    with mpmath.workprec(q.precision_bits):
        exact = abs(Q * mpmath.euler - P)
        assert abs(q.abs_error - exact) <= exact * mpmath.ldexp(1, -12)


def test_constant_ref_gamma_plus_ln():
    v = constant_ref(ConstantId.gamma_plus_ln(Fraction(3, 2)), 128).value
    with mpmath.workprec(200):
        assert abs(v - (mpmath.euler + mpmath.log(mpmath.mpf(3) / 2))) <= mpmath.ldexp(1, -127)
