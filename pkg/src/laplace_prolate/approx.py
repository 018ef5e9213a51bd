"""Spectral approximation, truncated Laplace inversion and the closed-form test pair.

Coefficients in the eigenfunction basis are ``b_k(g) = <g, phi_k>``; the
operator acts diagonally on them, ``b_k(L f) = nu_k b_k(f)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .eigensystem import ProblemParams
from .quadrature import QuadRule
from .spectrum import Spectrum
from .specfun import jacobi_orthonormal_values

#: ``invert`` refuses eigenvalues this small; dividing by them amplifies any error in b(g) beyond use.
MIN_INVERTIBLE_NU = 1e-250


class ConditioningError(ArithmeticError):
    """Truncated inversion would divide by an eigenvalue below the usable floor."""


@dataclass(frozen=True)
class ExpansionSeries:
    basis: Literal["phi", "jacobi"]
    coeffs: np.ndarray
    params: ProblemParams

    def __post_init__(self):
        if self.basis not in ("phi", "jacobi"):
            raise ValueError(f"basis must be 'phi' or 'jacobi', got {self.basis!r}")
        arr = np.array(self.coeffs, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    def __len__(self) -> int:
        return len(self.coeffs)

    def tail_norm(self, n: int) -> float:
        """``sqrt(sum_{k > n} b_k^2)``, the L2 distance to the rank-(n+1) truncation."""
        return math.sqrt(math.fsum(self.coeffs[n + 1:] ** 2))


@dataclass(frozen=True)
class TestPair:
    """``f(t) = e^{beta t} sin(a t)`` and its unweighted Laplace image ``g``."""

    __test__ = False

    a: float
    beta: float
    c: float
    f: Callable
    g: Callable


def _phi_rows(spectrum: Spectrum, x, count: int) -> np.ndarray:
    if count > len(spectrum.pairs):
        raise ValueError(f"need {count} eigenfunctions, spectrum holds {len(spectrum.pairs)}")
    return spectrum.phi_matrix(np.atleast_1d(np.asarray(x, dtype=float)), count)


def _scalar_or_array(x, values: np.ndarray):
    return float(values[0]) if np.ndim(x) == 0 else values


def expand(f: Callable, spectrum: Spectrum, rule: QuadRule, n_terms: int) -> ExpansionSeries:
    """``b_k(f)`` for ``k < n_terms`` by quadrature."""
    if rule.alpha != spectrum.params.alpha:
        raise ValueError("quadrature weight does not match the spectrum's alpha")
    fv = np.asarray(f(rule.nodes), dtype=float)
    if not np.all(np.isfinite(fv)):
        raise FloatingPointError("f is not finite at a quadrature node")
    rows = _phi_rows(spectrum, rule.nodes, n_terms)
    return ExpansionSeries("phi", rows @ (rule.weights * fv), spectrum.params)


def forward_coeffs(series_f: ExpansionSeries, spectrum: Spectrum) -> ExpansionSeries:
    """Coefficients of ``L f`` from those of ``f``."""
    if series_f.params != spectrum.params:
        raise ValueError("series and spectrum have different parameters")
    n = len(series_f)
    return ExpansionSeries("phi", spectrum.nu[:n] * series_f.coeffs, spectrum.params)


def project(series: ExpansionSeries, spectrum: Spectrum, n: int, x):
    """``S_n g(x) = sum_{k <= n} b_k phi_k(x)``."""
    if not 0 <= n < len(series):
        raise ValueError(f"n must be in [0, {len(series)}), got {n}")
    rows = _phi_rows(spectrum, x, n + 1)
    return _scalar_or_array(x, series.coeffs[: n + 1] @ rows)


def invert(series_g: ExpansionSeries, spectrum: Spectrum, N: int, x):
    """Truncated spectral inverse ``sum_{k <= N} b_k(g) / nu_k phi_k(x)``."""
    if not 0 <= N < len(series_g):
        raise ValueError(f"N must be in [0, {len(series_g)}), got {N}")
    nu = spectrum.nu[: N + 1]
    if np.any(nu < MIN_INVERTIBLE_NU):
        k = int(np.argmax(nu < MIN_INVERTIBLE_NU))
        raise ConditioningError(f"nu_{k} = {nu[k]:.3e} is too small to divide by")
    rows = _phi_rows(spectrum, x, N + 1)
    return _scalar_or_array(x, (series_g.coeffs[: N + 1] / nu) @ rows)


def test_pair(a: float, beta: float, c: float) -> TestPair:
    """Closed-form ``g(x) = int_{-1}^{1} e^{cxt} e^{beta t} sin(a t) dt``."""
    if a == 0 and abs(beta) <= abs(c):
        raise ValueError("a = 0 with |beta| <= c makes the closed form singular on [-1, 1]")
    sa, ca = math.sin(a), math.cos(a)

    def f(t):
        t = np.asarray(t, dtype=float)
        return np.exp(beta * t) * np.sin(a * t)

    def g(x):
        u = c * np.asarray(x, dtype=float) + beta
        return 2.0 / (a * a + u * u) * (u * sa * np.cosh(u) - a * ca * np.sinh(u))

    return TestPair(a, beta, c, f, g)


test_pair.__test__ = False


def legendre_project(g: Callable, alpha: float, n: int, rule: QuadRule, x):
    """Projection of ``g`` on the first ``n + 1`` orthonormal Jacobi polynomials."""
    if rule.alpha != alpha:
        raise ValueError("quadrature weight does not match alpha")
    gv = np.asarray(g(rule.nodes), dtype=float)
    coeffs = jacobi_orthonormal_values(alpha, n, rule.nodes) @ (rule.weights * gv)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    return _scalar_or_array(x, coeffs @ jacobi_orthonormal_values(alpha, n, xa))


def sup_error(approx, exact) -> float:
    return float(np.max(np.abs(np.asarray(approx) - np.asarray(exact))))


def l2_error(approx_at_nodes, exact_at_nodes, rule: QuadRule) -> float:
    """Weighted L2 distance using values at the rule's nodes."""
    return rule.norm(np.asarray(approx_at_nodes) - np.asarray(exact_at_nodes))


def sup_grid(points: int = 1001) -> np.ndarray:
    return np.linspace(-1.0, 1.0, points)
