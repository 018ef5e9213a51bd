"""Published inequalities for the spectrum, evaluated numerically.

Bounds whose hypotheses fail return ``None`` instead of raising; the
hypotheses are part of the statement, not an error condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigensystem import EigenPair, ProblemParams

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BoundReport:
    name: str
    n: int | None
    lhs: float
    rhs: float
    applicable: bool
    satisfied: bool | None = None


def decay_constant(alpha: float) -> float:
    """``2^{-a} pi^{3/2} / sqrt(e (a+1))``, shared by the eigenvalue and coefficient bounds."""
    return 2.0 ** (-alpha) * math.pi ** 1.5 / math.sqrt(math.e * (alpha + 1))


def log_nu_upper_bound(params: ProblemParams, n: int) -> float | None:
    c = params.c
    if not n > math.e * c / 2 + 1:
        return None
    ell = math.log((2 * n - 1) / (math.e * c))
    return c + math.log(decay_constant(params.alpha)) - math.log(ell) - (n - 1) * ell


def nu_upper_bound(params: ProblemParams, n: int) -> float | None:
    """Super-exponential decay bound on ``nu_n``, valid for ``n > e c / 2 + 1``."""
    lb = log_nu_upper_bound(params, n)
    return None if lb is None else math.exp(lb)


def _check_lower_alpha(alpha: float) -> None:
    if not alpha > -0.5:
        raise ValueError(f"lower bound on nu_0 needs alpha > -1/2, got {alpha}")


def log_nu0_lower_bound(params: ProblemParams, gamma: float) -> float:
    _check_lower_alpha(params.alpha)
    if not 0 < gamma < 1:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    a = params.alpha
    log_k = (0.5 * math.log(2 / math.pi) + 2 * math.log1p(-gamma)
             + (a - 0.5) * math.log1p(-gamma * gamma) - math.log(a + 1))
    return log_k + gamma * gamma * params.c


def nu0_lower_bound(params: ProblemParams, gamma: float) -> float:
    """``K_{a,gamma} e^{gamma^2 c} <= nu_0`` for ``alpha > -1/2``."""
    return math.exp(log_nu0_lower_bound(params, gamma))


def nu0_lower_bound_best(params: ProblemParams, tol: float = 1e-8) -> tuple[float, float]:
    """Golden-section maximization of the lower bound over gamma in (0.01, 0.99)."""
    _check_lower_alpha(params.alpha)
    f = lambda g: log_nu0_lower_bound(params, g)  # noqa: E731
    lo, hi = 0.01, 0.99
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
    g = 0.5 * (lo + hi)
    return g, math.exp(f(g))


def log_coeff_decay_bound(params: ProblemParams, log_nu_n: float, k: int) -> float:
    c = params.c
    return (math.log(decay_constant(params.alpha)) - log_nu_n + c - math.log(k + 0.5)
            + k * math.log(math.e * c / (2 * k + 1)))


def coeff_decay_bound(params: ProblemParams, nu_n: float, k: int) -> float:
    """Upper bound on ``|d_k^n|`` given ``nu_n``; may overflow to ``inf`` for tiny ``nu_n``."""
    if not nu_n > 0:
        raise ValueError("nu_n must be positive")
    lb = log_coeff_decay_bound(params, math.log(nu_n), k)
    return math.inf if lb > 709 else math.exp(lb)


def _sup_bound_q_limit(alpha: float) -> float:
    return 0.5 + alpha if alpha <= 0 else min(1.0, 0.5 + alpha)


def phi_sup_bound(chi_n: float, params: ProblemParams) -> float | None:
    """``3 sqrt(a+1) chi^{(a+1)/2}`` bounding ``sup |phi_n|``, when the hypotheses hold."""
    a = params.alpha
    if not a > -0.5:
        return None
    if not chi_n >= 6 * (a + 1) / (a + 3):
        return None
    q = params.c ** 2 / chi_n
    if q > _sup_bound_q_limit(a):
        return None
    return 3 * math.sqrt(a + 1) * chi_n ** ((a + 1) / 2)


def local_estimate_applicable(chi_n: float, params: ProblemParams) -> bool:
    if not chi_n > 0:
        return False
    q = params.c ** 2 / chi_n
    return not (params.alpha > 0 and q > params.alpha / 2)


def local_estimate_check(pair: EigenPair, params: ProblemParams | None = None,
                         grid_points: int = 401) -> BoundReport:
    """``max (1-t^2) w(t) phi_n(t)^2`` over a grid against ``1 + alpha``."""
    from .spectrum import eval_phi

    params = pair.params if params is None else params
    t = np.linspace(-1.0, 1.0, grid_points)
    phi = eval_phi(pair, t)
    lhs = float(np.max((1 - t * t) ** (1 + params.alpha) * phi * phi))
    rhs = 1.0 + params.alpha
    if not local_estimate_applicable(pair.chi, params):
        return BoundReport("local_estimate", pair.n, lhs, rhs, False)
    return BoundReport("local_estimate", pair.n, lhs, rhs, True, lhs <= rhs)


def approx_error_bounds(params: ProblemParams, n: int, f_norm: float) -> tuple[float, float] | None:
    """L2 bound and sup-bound shape (unknown constant set to 1) for ``g - S_n g``."""
    a, c = params.alpha, params.c
    if not (a > -0.5 and n >= math.e * c / 2):
        return None
    ell = math.log((2 * n + 1) / (math.e * c))
    core = math.exp(c - n * ell) / ell * f_norm
    l2 = decay_constant(a) * core
    shape = ((n + 1) * (n + 2 * a + 2)) ** ((a + 1) / 2) * core
    return l2, shape
