import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from biunivalent.errors import NotNormalized, OrderMismatch
from biunivalent.series import TruncatedSeries, compose, derivative, invert, multiply

from conftest import random_normalized

z = sp.symbols("z")


def _sympy_coeffs(expr, order):
    """z..z**order coefficients of a sympy expression (independent oracle)."""
    poly = sp.series(expr, z, 0, order + 1).removeO()
    return [complex(poly.coeff(z, k)) for k in range(1, order + 1)]


def _series(*coeffs):
    return TruncatedSeries(list(coeffs))


def test_multiply_monomials():
    out = multiply(_series(1, 0, 0), _series(1, 0, 0))
    np.testing.assert_allclose(out.coeffs, [0, 1, 0])


def test_multiply_binomial_square():
    out = multiply(_series(1, 1, 0, 0), _series(1, 1, 0, 0))
    np.testing.assert_allclose(out.coeffs, [0, 1, 2, 1])


def test_multiply_against_sympy():
    expected = _sympy_coeffs((z + 2 * z**2) * (z + 3 * z**2), 4)
    out = multiply(_series(1, 2, 0, 0), _series(1, 3, 0, 0))
    np.testing.assert_allclose(out.coeffs, expected)
    np.testing.assert_allclose(out.coeffs, [0, 1, 5, 6])


def test_multiply_order_mismatch():
    with pytest.raises(OrderMismatch):
        multiply(_series(1, 0), _series(1, 0, 0))


def test_compose_identities(rng):
    f = random_normalized(rng, order=6)
    ident = TruncatedSeries.identity(6)
    np.testing.assert_allclose(compose(ident, f).coeffs, f.coeffs, atol=1e-15)
    np.testing.assert_allclose(compose(f, ident).coeffs, f.coeffs, atol=1e-15)


def test_compose_against_sympy():
    inner = z + z**2
    expected = _sympy_coeffs(inner + inner**2, 4)
    out = compose(_series(1, 1, 0, 0), _series(1, 1, 0, 0))
    np.testing.assert_allclose(out.coeffs, expected)
    np.testing.assert_allclose(out.coeffs, [1, 2, 2, 1])


def test_invert_identity():
    np.testing.assert_allclose(invert(TruncatedSeries.identity(5)).coeffs, [1, 0, 0, 0, 0])


def test_invert_truncated_koebe_gives_catalan():
    # inverse of the Koebe function has coefficients (-1)^(n-1) C_n (Catalan)
    catalan = [(-1) ** (n - 1) * math.comb(2 * n, n) // (n + 1) for n in range(1, 5)]
    g = invert(_series(1, 2, 3, 4))
    np.testing.assert_allclose(g.coeffs, catalan, atol=1e-12)
    np.testing.assert_allclose(g.coeffs, [1, -2, 5, -14], atol=1e-12)


def test_invert_quadratic_against_sympy_reversion():
    # w = z + z^2  =>  z = (-1 + sqrt(1 + 4w))/2
    w = sp.symbols("w")
    expected = sp.series((-1 + sp.sqrt(1 + 4 * w)) / 2, w, 0, 5).removeO()
    expected = [float(expected.coeff(w, k)) for k in range(1, 5)]
    g = invert(_series(1, 1, 0, 0))
    np.testing.assert_allclose(g.coeffs, expected, atol=1e-12)
    np.testing.assert_allclose(g.coeffs, [1, -1, 2, -5], atol=1e-12)


def test_invert_requires_normalization():
    with pytest.raises(NotNormalized):
        invert(_series(2, 1, 0))


@pytest.mark.parametrize(
    "coeffs, expected",
    [([1], [1]), ([1, 1], [1, 2]), ([1, 2, 3], [1, 4, 9])],
)
def test_derivative(coeffs, expected):
    np.testing.assert_allclose(derivative(TruncatedSeries(coeffs)), expected)


def test_inverse_closed_forms_match_recursive(rng):
    worst = 0.0
    for _ in range(1000):
        f = random_normalized(rng, order=10)
        a2, a3, a4 = f.coefficient(2), f.coefficient(3), f.coefficient(4)
        closed = np.array([-a2, 2 * a2**2 - a3, -(5 * a2**3 - 5 * a2 * a3 + a4)])
        g = invert(f)
        worst = max(worst, np.abs(g.coeffs[1:4] - closed).max())
    assert worst <= 1e-12


def test_round_trip_and_involution(rng):
    ident = TruncatedSeries.identity(10)
    for _ in range(200):
        f = random_normalized(rng, order=10)
        g = invert(f)
        assert np.abs(compose(f, g).coeffs - ident.coeffs).max() <= 1e-12
        assert np.abs(compose(g, f).coeffs - ident.coeffs).max() <= 1e-12
        assert np.abs(invert(g).coeffs - f.coeffs).max() <= 1e-12


def test_evaluation_matches_polynomial():
    f = _series(1, 2, 3)
    zz = 0.3 - 0.2j
    assert f(zz) == pytest.approx(zz + 2 * zz**2 + 3 * zz**3)


unit_complex = st.builds(
    lambda r, t: r * complex(math.cos(t), math.sin(t)),
    st.floats(0, 1),
    st.floats(0, 2 * math.pi),
)
series6 = st.lists(unit_complex, min_size=6, max_size=6).map(TruncatedSeries)


@settings(max_examples=200, deadline=None)
@given(series6, series6, series6)
def test_multiply_commutative_associative(a, b, c):
    np.testing.assert_allclose(multiply(a, b).coeffs, multiply(b, a).coeffs, atol=1e-12)
    np.testing.assert_allclose(
        multiply(multiply(a, b), c).coeffs, multiply(a, multiply(b, c)).coeffs, atol=1e-12
    )


@settings(max_examples=200, deadline=None)
@given(st.lists(unit_complex, min_size=9, max_size=9))
def test_round_trip_property(tail):
    f = TruncatedSeries([1.0] + tail)
    out = compose(f, invert(f))
    assert np.abs(out.coeffs - TruncatedSeries.identity(10).coeffs).max() <= 1e-12
