from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from eulergompertz.exact_core import (
    ConsistencyError,
    ConstantTag,
    LogLinearForm,
    Polynomial,
    binomial,
    format_polynomial,
    harmonic,
    lcm_upto,
    poly_eval_exact,
    rodrigues_step,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
poly_st = st.lists(fractions, max_size=8).map(Polynomial)


def test_harmonic_and_lcm():
    assert harmonic(0) == 0
    assert harmonic(4) == Fraction(25, 12)
    assert [lcm_upto(n) for n in range(8)] == [1, 1, 2, 6, 12, 60, 60, 420]
    assert binomial(5, 7) == 0 and binomial(5, -1) == 0 and binomial(6, 3) == 20


def test_polynomial_normalises_trailing_zeros():
    p = Polynomial([1, 2, 0, 0])
    assert p.degree == 1 and p == Polynomial([1, 2])
    assert Polynomial().degree == -1 and Polynomial([0]).is_zero()


def test_polynomial_rejects_floats():
    with pytest.raises(TypeError):
        Polynomial([0.5])


@given(poly_st, poly_st, fractions)
def test_ring_operations_commute_with_evaluation(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a * b)(x) == a(x) * b(x)
    assert (a - b)(x) == a(x) - b(x)


@given(poly_st, fractions)
def test_eval_matches_naive(p, x):
    assert poly_eval_exact(p, x) == sum(c * x**k for k, c in enumerate(p.coeffs))


def test_derivative_shift_divide():
    p = Polynomial([3, 0, 5])
    assert p.derivative() == Polynomial([0, 10])
    assert p.shift(2) == Polynomial([0, 0, 3, 0, 5])
    assert p.shift(2).divide_by_x() == p.shift(1)
    with pytest.raises(ConsistencyError):
        p.divide_by_x()


def test_format_polynomial():
    assert format_polynomial(Polynomial([3, -4, Fraction(-9, 4)])) == "3 - 4*x - 9/4*x^2"
    assert format_polynomial(Polynomial([0, 1])) == "x"
    assert format_polynomial(Polynomial()) == "0"
    assert format_polynomial(Polynomial([-1, 0, 1]), "s") == "-1 + s^2"


def test_integrality_helpers():
    p = Polynomial([Fraction(1, 2), Fraction(1, 3)])
    assert p.common_denominator() == 6
    assert not p.is_integral()
    assert (p * 6).integer_coeffs() == [3, 2]


def _sym_rodrigues(a, b, m):
    x, L = sp.symbols("x L")
    expr = sum(sp.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(a.coeffs))
    expr += L * sum(sp.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(b.coeffs))
    # L = c + ln x, so dL/dx = 1/x
    f = x**m * expr
    for _ in range(m):
        f = sp.expand(sp.diff(f, x) + sp.diff(f, L) / x)
    f = sp.expand(f / sp.factorial(m))
    return sp.Poly(f.coeff(L, 0), x), sp.Poly(f.coeff(L, 1), x)


@given(
    st.lists(st.fractions(max_denominator=9).filter(lambda q: abs(q) < 50), max_size=4),
    st.lists(st.fractions(max_denominator=9).filter(lambda q: abs(q) < 50), max_size=4),
    st.integers(min_value=0, max_value=4),
)
def test_rodrigues_step_matches_symbolic(a, b, m):
    a, b = Polynomial(a), Polynomial(b)
    out = rodrigues_step(LogLinearForm(a, b, ConstantTag.EULER_GAMMA), m)
    pa, pb = _sym_rodrigues(a, b, m)
    want_a = [Fraction(int(c.p), int(c.q)) for c in reversed(pa.all_coeffs())]
    want_b = [Fraction(int(c.p), int(c.q)) for c in reversed(pb.all_coeffs())]
    assert out.rational_part == Polynomial(want_a)
    assert out.log_part == Polynomial(want_b)


def test_log_linear_form_derivative():
    f = LogLinearForm(Polynomial([1, 2]), Polynomial([0, 3]))
    d = f.derivative()
    # (1 + 2x)' + 3x/x + 3 L
    assert d.rational_part == Polynomial([5]) and d.log_part == Polynomial([3])


def test_scalar_examples():
    assert [harmonic(n) for n in (0, 1, 3)] == [0, 1, Fraction(11, 6)]
    assert [lcm_upto(n) for n in (1, 6, 10)] == [1, 60, 2520]
    assert binomial(4, 2) == 6 and binomial(0, 0) == 1 and binomial(3, 5) == 0
    assert Polynomial([1, 2])(1) == 3
    assert Polynomial()(Fraction(7, 3)) == 0
    assert Polynomial([1, 12, 3])(1) == 16


@given(st.integers(min_value=1, max_value=300))
def test_harmonic_and_lcm_invariants(n):
    assert harmonic(n) - harmonic(n - 1) == Fraction(1, n)
    assert all(lcm_upto(n) % k == 0 for k in range(1, n + 1))
    assert lcm_upto(n + 1) % lcm_upto(n) == 0


def test_rodrigues_examples():
    f = LogLinearForm(Polynomial([2, -3]), Polynomial([1, 1]))
    g = rodrigues_step(f, 1)
    assert (g.rational_part, g.log_part) == (Polynomial([3, -5]), Polynomial([1, 2]))
    assert rodrigues_step(f, 0) == f
    h = rodrigues_step(LogLinearForm(Polynomial(), Polynomial([1])), 1)
    assert (h.rational_part, h.log_part) == (Polynomial([1]), Polynomial([1]))


@given(st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=12))
def test_rodrigues_on_monomials(k, m):
    # (1/m!) D^m x^(m+k) = C(m+k, m) x^k, and the log term picks up C(m+k,m)(H_{m+k} - H_k) x^k
    c = binomial(m + k, m)
    plain = rodrigues_step(LogLinearForm(Polynomial.monomial(k), Polynomial()), m)
    assert plain.rational_part == Polynomial.monomial(k, c) and plain.log_part.is_zero()
    logged = rodrigues_step(LogLinearForm(Polynomial(), Polynomial.monomial(k)), m)
    assert logged.log_part == Polynomial.monomial(k, c)
    assert logged.rational_part == Polynomial.monomial(k, c * (harmonic(m + k) - harmonic(k)))
