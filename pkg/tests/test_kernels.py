import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulergompertz import _pykernels, kernels

BACKENDS = kernels.available_backends()
ints = st.integers(min_value=-(10**40), max_value=10**40)
polys = st.lists(ints, max_size=12)


def _rising(k):
    out = [1]
    for j in range(k):
        out = _pykernels.poly_mul(out, [j, 1])
    return out


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def test_selected_backend_is_available():
    assert kernels.BACKEND in BACKENDS
    for name in kernels.KERNEL_FUNCTIONS:
        assert getattr(kernels, name) is getattr(BACKENDS[kernels.BACKEND], name)


def test_compiled_backend_built():
    # the repo ships the extension; a missing build is a packaging problem
    assert "compiled" in BACKENDS


@given(polys, polys)
def test_poly_mul_matches_reference(a, b):
    for impl in BACKENDS.values():
        assert impl.poly_mul(a, b) == _pykernels.poly_mul(a, b)


@given(polys, st.lists(ints, max_size=6))
def test_divmod_monic_identity(num, head):
    den = head + [1]
    for impl in BACKENDS.values():
        q, r = impl.divmod_monic(num, den)
        assert len(r) == len(den) - 1
        back = _pykernels.poly_mul(q, den) if q else []
        back = back + [0] * (max(len(num), len(r)) - len(back))
        for i, c in enumerate(r):
            back[i] += c
        padded = list(num) + [0] * (len(back) - len(num))
        assert back == padded


def test_divmod_rejects_non_monic(backend):
    with pytest.raises(ValueError):
        backend.divmod_monic([1, 2, 3], [1, 2])


@given(polys, st.integers(min_value=0, max_value=8))
def test_eval_at_nonpositive(poly, count):
    expected = [sum(c * (-m) ** i for i, c in enumerate(poly)) for m in range(count)]
    for impl in BACKENDS.values():
        assert impl.eval_at_nonpositive(poly, count) == expected


@given(st.lists(ints, min_size=1, max_size=9))
def test_pole_quotient_sum_is_polynomial_part(weights):
    expected = [0] * (len(weights) - 1)
    for k in range(1, len(weights)):
        q, r = _pykernels.divmod_monic(_rising(k), [k, 1])
        assert r == [(-1) ** k * _factorial(k)]
        for i, c in enumerate(q):
            expected[i] += weights[k] * c
    for impl in BACKENDS.values():
        assert impl.pole_quotient_sum(weights) == expected


@given(st.lists(ints, max_size=10))
@settings(max_examples=60)
def test_monomial_to_rising_round_trip(coeffs):
    for impl in BACKENDS.values():
        rising = impl.monomial_to_rising(coeffs)
        assert len(rising) == len(coeffs)
        total = [0] * len(coeffs)
        for k, c in enumerate(rising):
            for i, v in enumerate(_rising(k)):
                total[i] += c * v
        assert total == list(coeffs)


def _factorial(k):
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out
