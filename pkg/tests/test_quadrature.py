import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from laplace_prolate.eigensystem import ProblemParams, compute_eigenpairs
from laplace_prolate.quadrature import gauss_jacobi_rule, inner_product, total_mass
from laplace_prolate.specfun import beta, jacobi_orthonormal_values
from laplace_prolate.spectrum import eval_phi

alphas = st.floats(min_value=-0.95, max_value=5.0)


def test_two_point_legendre():
    r = gauss_jacobi_rule(0.0, 2)
    np.testing.assert_allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-15)
    np.testing.assert_allclose(r.weights, [1.0, 1.0], rtol=1e-14)


def test_chebyshev_rule():
    r = gauss_jacobi_rule(-0.5, 3)
    np.testing.assert_allclose(r.nodes, np.cos(np.array([5, 3, 1]) * math.pi / 6), atol=1e-15)
    np.testing.assert_allclose(r.weights, [math.pi / 3] * 3, rtol=1e-14)


def test_moment_against_beta_reduction():
    # int x^10 (1-x^2) dx = B(11/2, 2) after x^2 = t
    r = gauss_jacobi_rule(1.0, 20)
    assert r.integrate(r.nodes ** 10) == pytest.approx(beta(5.5, 2).value, rel=1e-13)


def test_against_scipy_roots():
    r = gauss_jacobi_rule(0.3, 50)
    x, w = special.roots_jacobi(50, 0.3, 0.3)
    np.testing.assert_allclose(r.nodes, x, atol=1e-14)
    np.testing.assert_allclose(r.weights, w, rtol=1e-12)


@given(alphas, st.integers(min_value=1, max_value=120))
def test_mass_symmetry_and_order(alpha, m):
    r = gauss_jacobi_rule(alpha, m)
    assert r.weights.sum() == pytest.approx(total_mass(alpha), rel=1e-12)
    assert np.all(r.weights > 0)
    assert np.all(np.diff(r.nodes) > 0) and np.all(np.abs(r.nodes) < 1)
    np.testing.assert_array_equal(r.nodes, -r.nodes[::-1])
    np.testing.assert_array_equal(r.weights, r.weights[::-1])


@given(alphas, st.integers(min_value=1, max_value=8))
def test_exact_on_monomials(alpha, m):
    r = gauss_jacobi_rule(alpha, m)
    for d in range(0, 2 * m, 2):
        # even moments: int x^d (1-x^2)^a = B((d+1)/2, a+1)
        assert r.integrate(r.nodes ** d) == pytest.approx(beta((d + 1) / 2, alpha + 1).value, rel=1e-12)
    for d in range(1, 2 * m, 2):
        assert abs(r.integrate(r.nodes ** d)) < 1e-14


def test_rule_is_read_only():
    r = gauss_jacobi_rule(0.0, 5)
    with pytest.raises(ValueError):
        r.nodes[0] = 0.0


@pytest.mark.parametrize("alpha, m", [(-1.0, 5), (0.0, 0)])
def test_rule_domain(alpha, m):
    with pytest.raises(ValueError):
        gauss_jacobi_rule(alpha, m)


def test_inner_product_examples():
    one = lambda x: np.ones_like(x)  # noqa: E731
    assert inner_product(one, one, gauss_jacobi_rule(0.0, 10)) == pytest.approx(2.0, rel=1e-14)
    r = gauss_jacobi_rule(1.0, 30)
    p = lambda k: (lambda x: jacobi_orthonormal_values(1.0, k, x)[k])  # noqa: E731
    assert abs(inner_product(p(2), p(3), r)) < 1e-13
    pair = compute_eigenpairs(ProblemParams(math.pi, 0.0), 0)[0]
    phi = lambda x: eval_phi(pair, x)  # noqa: E731
    assert inner_product(phi, phi, gauss_jacobi_rule(0.0, 400)) == pytest.approx(1.0, abs=1e-10)


def test_inner_product_rejects_nonfinite():
    with pytest.raises(FloatingPointError):
        inner_product(lambda x: np.full_like(x, np.nan), lambda x: x, gauss_jacobi_rule(0.0, 3))


def test_saturation_200_to_400():
    pair = compute_eigenpairs(ProblemParams(5 * math.pi, -0.75), 6)[6]
    f = lambda x: np.exp(3 * x) * np.sin(5 * math.pi * x)  # noqa: E731
    phi = lambda x: eval_phi(pair, x)  # noqa: E731
    a = inner_product(f, phi, gauss_jacobi_rule(-0.75, 200))
    b = inner_product(f, phi, gauss_jacobi_rule(-0.75, 400))
    assert abs(a - b) < 1e-12
