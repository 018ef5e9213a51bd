import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from laplace_prolate.bounds import (
    approx_error_bounds,
    coeff_decay_bound,
    decay_constant,
    local_estimate_applicable,
    local_estimate_check,
    nu0_lower_bound,
    nu0_lower_bound_best,
    nu_upper_bound,
    phi_sup_bound,
)
from laplace_prolate.eigensystem import ProblemParams, compute_eigenpairs
from laplace_prolate.spectrum import compute_spectrum, eval_phi

from conftest import spectrum_for

PI = math.pi


def test_decay_constant():
    assert decay_constant(0.0) == pytest.approx(PI ** 1.5 / math.sqrt(math.e), rel=1e-15)
    assert decay_constant(0.0) == pytest.approx(3.3772, abs=2e-4)


def test_upper_bound_gate():
    p = ProblemParams(PI, 0.0)
    assert all(nu_upper_bound(p, n) is None for n in range(6))
    assert nu_upper_bound(p, 6) is not None


def test_upper_bound_dominates_example():
    sp = spectrum_for(PI, -0.75, None)
    assert nu_upper_bound(sp.params, 20) >= sp.nu[20]


@settings(max_examples=25)
@given(st.floats(min_value=0.5, max_value=12), st.floats(min_value=-0.9, max_value=3))
def test_upper_bound_dominates_everywhere(c, alpha):
    params = ProblemParams(c, alpha)
    sp = compute_spectrum(params, 40)
    for n in range(41):
        b = nu_upper_bound(params, n)
        if b is not None:
            assert sp.nu[n] <= b


def test_lower_bound_constant():
    p = ProblemParams(2.0, 0.0)
    k = math.sqrt(2 / PI) * 0.25 / math.sqrt(0.75)
    assert k == pytest.approx(0.23033, abs=1e-5)
    assert nu0_lower_bound(p, 0.5) == pytest.approx(k * math.exp(0.5), rel=1e-14)
    assert nu0_lower_bound(ProblemParams(1.0, 1.0), 1e-9) == pytest.approx(math.sqrt(2 / PI) / 2, rel=1e-6)


@pytest.mark.parametrize("alpha, gamma", [(-0.5, 0.5), (-0.75, 0.5), (0.0, 0.0), (0.0, 1.0)])
def test_lower_bound_domain(alpha, gamma):
    with pytest.raises(ValueError):
        nu0_lower_bound(ProblemParams(1.0, alpha), gamma)


def test_lower_bound_best_properties():
    gammas = []
    for k in range(1, 6):
        p = ProblemParams(k * PI, 0.0)
        g, b = nu0_lower_bound_best(p)
        assert b >= nu0_lower_bound(p, 0.5) >= 0
        assert b <= spectrum_for(k * PI, 0.0, 0).nu[0]
        gammas.append(g)
    assert all(b >= a for a, b in zip(gammas, gammas[1:]))
    _, b = nu0_lower_bound_best(ProblemParams(5 * PI, 1.0))
    assert b <= 1.39132e04


def test_coefficient_bound():
    p = ProblemParams(PI, 0.0)
    assert coeff_decay_bound(p, 2.0, 0) == pytest.approx(decay_constant(0.0) / 2.0 * math.exp(PI) * 2, rel=1e-14)
    sp = spectrum_for(PI, 0.0, None)
    d30 = abs(sp.pairs[0].coeffs[15])
    assert coeff_decay_bound(p, sp.nu[0], 30) >= d30
    assert coeff_decay_bound(p, 1e-310, 0) == math.inf
    with pytest.raises(ValueError):
        coeff_decay_bound(p, 0.0, 3)


def test_sup_bound_examples():
    p = ProblemParams(PI, 0.0)
    assert phi_sup_bound(4 * PI ** 2, p) == pytest.approx(6 * PI, rel=1e-14)
    assert phi_sup_bound(PI ** 2, p) is None
    assert phi_sup_bound(100.0, ProblemParams(PI, -0.75)) is None
    assert phi_sup_bound(0.1, ProblemParams(0.1, 1.0)) is None


def test_sup_bound_and_attainment():
    sp = spectrum_for(PI, 1.0, 20)
    pair = sp.pairs[20]
    bound = phi_sup_bound(pair.chi, sp.params)
    assert bound is not None
    x = np.linspace(-1, 1, 201)
    v = np.abs(eval_phi(pair, x))
    assert v.max() <= bound
    assert v.max() == pytest.approx(max(v[0], v[-1]), rel=1e-12)


def test_local_estimate_examples():
    sp = spectrum_for(PI, 1.0, 30)
    for pair in sp.pairs:
        rep = local_estimate_check(pair)
        if rep.applicable:
            assert rep.lhs <= 2.0 and rep.satisfied
    assert local_estimate_check(sp.pairs[30]).satisfied
    pair = sp.pairs[4]
    t = np.array([-1.0, 1.0])
    assert np.all((1 - t * t) ** 2 * eval_phi(pair, t) ** 2 == 0)


def test_local_estimate_gate():
    assert not local_estimate_applicable(-1.0, ProblemParams(1.0, 0.0))
    assert not local_estimate_applicable(10.0, ProblemParams(PI, 1.0))
    assert local_estimate_applicable(10.0, ProblemParams(PI, 0.0))
    rep = local_estimate_check(compute_eigenpairs(ProblemParams(PI, 1.0), 0)[0])
    assert not rep.applicable and rep.satisfied is None


def test_local_estimate_value_negative_alpha_small_c():
    # At c -> 0 phi_2 is the normalized Jacobi polynomial; compare with an independent evaluation.
    alpha = -0.75
    pair = compute_eigenpairs(ProblemParams(1e-8, alpha), 2)[2]
    h, _ = integrate.quad(lambda x: special.eval_jacobi(2, alpha, alpha, x) ** 2 * (1 - x * x) ** alpha,
                          -1, 1, limit=200)
    t = np.linspace(-1, 1, 401)
    ref = np.max((1 - t * t) ** (1 + alpha) * special.eval_jacobi(2, alpha, alpha, t) ** 2 / h)
    rep = local_estimate_check(pair)
    assert rep.lhs == pytest.approx(ref, rel=1e-6)
    # the value exceeds 1 + alpha: the estimate does not extend to negative alpha
    assert rep.applicable and rep.lhs > 1 + alpha and rep.satisfied is False


def test_approx_bounds_gate_and_decay():
    p = ProblemParams(5 * PI, 0.0)
    assert approx_error_bounds(p, 16, 1.0) is None
    assert approx_error_bounds(ProblemParams(1.0, -0.75), 10, 1.0) is None
    l2 = [approx_error_bounds(p, n, 1.0)[0] for n in range(22, 40)]
    assert all(b < a for a, b in zip(l2, l2[1:]))
    l2b, shape = approx_error_bounds(ProblemParams(1.0, 1.0), 5, 2.0)
    assert l2b > 0 and shape > 0
