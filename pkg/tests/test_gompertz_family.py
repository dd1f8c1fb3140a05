import math
from fractions import Fraction

import pytest
import sympy as sp

from eulergompertz import kernels
from eulergompertz.analysis import FamilySpec, converge_row
from eulergompertz.exact_core import ConsistencyError, Polynomial
from eulergompertz.gompertz_family import (
    MellinRationalFunction,
    gompertz_denominator,
    gompertz_integrality_check,
    gompertz_numerator,
    gompertz_pair,
    run_pipeline,
)
from eulergompertz.oracles import DELTA, constant_ref

F = Fraction


def test_denominator_examples():
    assert gompertz_denominator(0) == Polynomial([1])
    assert gompertz_denominator(1) == Polynomial([1, 4])
    assert gompertz_denominator(2) == Polynomial([1, 18, 18])
    assert gompertz_denominator(3) == Polynomial([1, 48, 150, F(200, 3)])


def test_numerator_examples():
    assert gompertz_numerator(0).is_zero()
    assert gompertz_numerator(1) == Polynomial([-3])
    assert gompertz_numerator(2) == Polynomial([F(-9, 2), F(-35, 2)])
    assert gompertz_numerator(3) == Polynomial([F(-11, 2), F(-173, 2), F(-133, 2)])


def test_values_at_one():
    assert [gompertz_denominator(n)(1) for n in range(5)] == [1, 5, 37, F(797, 3), F(10781, 6)]
    assert gompertz_pair(1).ratio(1) == F(3, 5)
    assert gompertz_pair(2).ratio(1) == F(22, 37)


def test_pipeline_n2_intermediates():
    pipe = run_pipeline(2)
    nf = math.factorial(2)
    # residues of (1-s)_2^2/(s)_3 at 0, -1, -2 are 2, -18*2, 36*2/2 after the 1/n! scaling
    assert [F(c) / nf for c in pipe.scaled_f2] == [1, 18, 18]
    assert [F(c) / nf for c in pipe.scaled_f1] == [F(-9, 2), F(-35, 2)]


def test_mellin_function_shape():
    m = MellinRationalFunction.for_index(4)
    assert len(m.numerator) == 9 and len(m.denominator()) == 6
    assert m.denominator()[-1] == 1


def _sympy_numerator(n):
    # independent route: sympy residues and polynomial division on the Mellin side, then solve for F1 in the rising basis
    s = sp.symbols("s")
    expr = sp.prod([(j - s) for j in range(1, n + 1)]) ** 2 / (sp.factorial(n) * sp.rf(s, n + 1))
    expr = sp.expand_func(expr)
    poly_part = sp.Poly(sp.quo(*sp.fraction(sp.together(expr)), s), s)
    den2 = [sp.cancel((s + k) * expr).subs(s, -k) / ((-1) ** k * sp.factorial(k)) for k in range(n + 1)]
    target = poly_part.as_expr() - sum(den2[k] * sp.cancel(sp.rf(s, k) / (s + k) - ((-1) ** k * sp.factorial(k)) / (s + k)) for k in range(n + 1))
    target = sp.Poly(sp.expand(sp.expand_func(target)), s)
    coeffs = []
    rest = target
    for k in range(n - 1, -1, -1):
        lead = rest.coeff_monomial(s**k)
        coeffs.append(lead)
        rest = sp.Poly(sp.expand(rest.as_expr() - lead * sp.expand_func(sp.rf(s, k))), s)
    assert rest.is_zero
    coeffs.reverse()
    return [F(int(c.p), int(c.q)) for c in coeffs], [F(int(c.p), int(c.q)) for c in den2]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_pipeline_matches_sympy(n):
    f1, f2 = _sympy_numerator(n)
    assert gompertz_numerator(n) == Polynomial(f1)
    assert gompertz_denominator(n) == Polynomial(f2)


def test_gate_raises_on_mismatch(monkeypatch):
    import eulergompertz.gompertz_family as gf

    gf.gompertz_numerator.cache_clear()
    monkeypatch.setattr(gf, "gompertz_denominator", lambda n: Polynomial([1, 2, 3]))
    with pytest.raises(ConsistencyError):
        gf.gompertz_numerator(2)
    gf.gompertz_numerator.cache_clear()


def test_backends_agree_on_pipeline(monkeypatch):
    import eulergompertz.gompertz_family as gf

    want = run_pipeline(30)
    for name, impl in kernels.available_backends().items():
        for fn in kernels.KERNEL_FUNCTIONS:
            monkeypatch.setattr(gf.kernels, fn, getattr(impl, fn))
        assert run_pipeline(30) == want, name


@pytest.mark.parametrize("n", [0, 1, 2, 7, 31, 64])
def test_integrality(n):
    assert gompertz_integrality_check(n).ok
    assert (gompertz_numerator(n) * math.factorial(n)).is_integral()


def test_integrality_examples():
    assert (gompertz_numerator(2) * 2).integer_coeffs() == [-9, -35]
    assert (gompertz_numerator(1) * 1).integer_coeffs() == [-3]


def test_denominator_coefficients_positive():
    for n in range(40):
        assert all(c > 0 for c in gompertz_denominator(n).coeffs)


def test_spot_errors():
    # frozen from mpmath's e * e1(1) at 40 digits
    d = float(constant_ref(DELTA, 128))
    assert abs(abs(d - 3 / 5) - 3.65263767680593e-3) < 1e-9
    assert abs(abs(d - 22 / 37) - 1.75276772859948e-3) < 1e-9


@pytest.mark.xfail(strict=True, reason="error oscillates: first increase at n = 24")
def test_error_strictly_decreasing_up_to_50():
    errs = [converge_row(FamilySpec("gompertz"), n, F(1), 256).log_abs_error for n in range(1, 51)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_error_tracks_model_envelope():
    errs = []
    for n in range(1, 51):
        row = converge_row(FamilySpec("gompertz"), n, F(1), 256)
        assert abs(row.slope_gap) <= 5
        errs.append(row.log_abs_error)
    assert all(errs[i + 5] < errs[i] for i in range(len(errs) - 5))
