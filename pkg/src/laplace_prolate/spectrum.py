"""Eigenvalues of the weighted finite Laplace transform and its eigenfunctions.

Two routes to ``nu_n`` live here:

* :func:`eigenvalue_nu` matches the Bessel-series expansion of
  ``L phi_n`` with the Jacobi expansion of ``phi_n`` at ``x = 1``. The sum has
  terms of both signs and loses roughly ``|log10(nu_n / nu_0)|`` digits, so in
  double precision it is only good while ``nu_n`` stays within ~12 orders of
  ``nu_0``.
* :func:`eigenvalue_nu_gram` uses ``nu_n d_r = sum_j <L P~_r, P~_j> d_j`` at
  the peak coefficient ``r``. The Gram entries come from the Taylor series of
  the kernel with nonnegative terms only, so tiny eigenvalues keep full
  relative accuracy. :func:`compute_spectrum` uses this route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .eigensystem import EigenPair, ProblemParams, compute_eigenpairs
from .quadrature import QuadRule, gauss_jacobi_rule
from .specfun import (
    beta,
    bessel_i_scaled,
    jacobi_orthonormal_values,
    jacobi_recurrence,
    jacobi_value_at_one,
    kummer_1f1,
    log_jacobi_norm,
    log_laplace_jacobi_prefactor,
)

N_SPEC_CAP = 120


@dataclass(frozen=True)
class Spectrum:
    params: ProblemParams
    pairs: list[EigenPair]
    nu: np.ndarray
    log_nu: np.ndarray

    @property
    def n_spec(self) -> int:
        return len(self.pairs) - 1

    def basis_values(self, x) -> np.ndarray:
        """``P~_k(x)`` for every degree used by the stored pairs."""
        kmax = max(int(p.degrees[-1]) for p in self.pairs)
        return jacobi_orthonormal_values(self.params.alpha, kmax, np.atleast_1d(x))

    def phi_matrix(self, x, n_terms: int | None = None) -> np.ndarray:
        """Rows ``phi_0(x), ..., phi_{n_terms-1}(x)``."""
        n_terms = len(self.pairs) if n_terms is None else n_terms
        basis = self.basis_values(x)
        return np.array([p.coeffs @ basis[p.degrees] for p in self.pairs[:n_terms]])


@dataclass(frozen=True)
class NystromSpectrum:
    m: int
    eigenvalues: np.ndarray


# -- Gram matrix of L in the Jacobi basis -----------------------------------------------


def _taylor_moments(alpha: float, c: float, kmax: int, order: int):
    """Scaled moments ``w[m, j] = <x^m, P~_j> sqrt(c^m / m!)``.

    Rows are normalized to unit max-norm; ``scales[m]`` holds the log of the
    factor taken out. ``<x^{m+1}, P~_j> = a_{j+1} <x^m, P~_{j+1}> + a_j <x^m, P~_{j-1}>``
    only ever adds nonnegative numbers.
    """
    width = kmax + order + 2
    a = jacobi_recurrence(alpha, width)
    cur = np.zeros(width)
    cur[0] = 1.0
    log_scale = 0.5 * log_jacobi_norm(alpha, 0)
    rows = np.empty((order + 1, kmax + 1))
    scales = np.empty(order + 1)
    for m in range(order + 1):
        rows[m] = cur[: kmax + 1]
        scales[m] = log_scale
        nxt = np.zeros(width)
        nxt[1:] += a[1:width] * cur[:-1]
        nxt[:-1] += a[1:width] * cur[1:]
        top = nxt.max()
        cur = nxt / top
        log_scale += math.log(top) + 0.5 * (math.log(c) - math.log(m + 1))
    return rows, scales


class GramRows:
    """Rows of ``G[r, j] = <L P~_r, P~_j>`` returned as ``(log_scale, row)`` pairs."""

    def __init__(self, params: ProblemParams, kmax: int):
        self.kmax = kmax
        order = kmax + 60 + math.ceil(2 * params.c)
        self._w, self._s = _taylor_moments(params.alpha, params.c, kmax, order)

    def row(self, r: int) -> tuple[float, np.ndarray]:
        wr = self._w[:, r]
        live = wr > 0
        logs = np.full(len(wr), -np.inf)
        logs[live] = 2 * self._s[live] + np.log(wr[live])
        top = logs.max()
        factors = np.exp(logs - top)
        return float(top), factors @ self._w


def eigenvalue_nu_gram(pair: EigenPair, gram: GramRows | None = None) -> tuple[float, float]:
    """``(nu_n, log nu_n)`` from the Gram row at the largest coefficient."""
    degrees = pair.degrees
    if gram is None or gram.kmax < degrees[-1]:
        gram = GramRows(pair.params, int(degrees[-1]))
    peak = int(np.argmax(np.abs(pair.coeffs)))
    log_scale, row = gram.row(int(degrees[peak]))
    ratio = float(row[degrees] @ pair.coeffs) / pair.coeffs[peak]
    if not ratio > 0:
        raise ArithmeticError(f"non-positive eigenvalue estimate for n={pair.n}")
    log_nu = log_scale + math.log(ratio)
    return math.exp(log_nu), log_nu


# -- Bessel-series route ---------------------------------------------------------------


def _laplace_terms(pair: EigenPair, z: float) -> tuple[np.ndarray, float]:
    """Signed terms of ``(L phi_n)(x)`` at ``z = c x > 0``, scaled by ``exp(-top)``."""
    a = pair.params.alpha
    logs = np.array([
        log_laplace_jacobi_prefactor(a, int(k)) + bessel_i_scaled(k + a + 0.5, z, a + 0.5).log_abs
        for k in pair.degrees
    ])
    top = float(np.max(logs[pair.coeffs != 0]))
    return pair.coeffs * np.exp(logs - top), top


def eigenvalue_nu(pair: EigenPair, params: ProblemParams | None = None) -> float:
    """``nu_n`` from equating the Jacobi and Bessel expansions of ``phi_n`` at ``x = 1``."""
    params = pair.params if params is None else params
    terms, top = _laplace_terms(pair, params.c)
    at_one = np.array([jacobi_value_at_one(params.alpha, int(k)).value for k in pair.degrees])
    den_terms = pair.coeffs * at_one
    den = math.fsum(den_terms)
    if abs(den) < 1e-250 * math.fsum(np.abs(den_terms)):
        raise ArithmeticError(f"phi_{pair.n}(1) cancelled to zero")
    return math.exp(top) * math.fsum(terms) / den


def bessel_route_condition(pair: EigenPair) -> float:
    """``sum |terms| / |sum terms|`` of the numerator in :func:`eigenvalue_nu`."""
    terms, _ = _laplace_terms(pair, pair.params.c)
    return float(np.sum(np.abs(terms)) / abs(math.fsum(terms)))


# -- eigenfunctions --------------------------------------------------------------------


def eval_phi(pair: EigenPair, x):
    """``phi_n(x) = sum_k d_k P~_k(x)`` on ``[-1, 1]``."""
    xa = np.asarray(x, dtype=float)
    basis = jacobi_orthonormal_values(pair.params.alpha, int(pair.degrees[-1]), xa)
    out = pair.coeffs @ basis[pair.degrees]
    return float(out) if xa.ndim == 0 else out


def eval_phi_extended(pair: EigenPair, nu_n: float, params: ProblemParams, x: float) -> float:
    """Analytic continuation of ``phi_n`` to ``x != 0`` via ``phi_n = L phi_n / nu_n``."""
    if x == 0:
        raise ValueError("the Bessel form is singular at x = 0; use eval_phi")
    if abs(x) > 50.0 / params.c:
        raise OverflowError(f"|x| = {abs(x)} exceeds the supported range 50/c")
    terms, top = _laplace_terms(pair, params.c * abs(x))
    val = math.exp(top) * math.fsum(terms) / nu_n
    return val if x > 0 or pair.parity == 0 else -val


def apply_operator(params: ProblemParams, f: Callable, rule: QuadRule, x):
    """``(L f)(x) = int e^{c x y} f(y) (1-y^2)^alpha dy`` on the quadrature rule."""
    fv = np.asarray(f(rule.nodes), dtype=float)
    if not np.all(np.isfinite(fv)):
        raise FloatingPointError("f is not finite at a quadrature node")
    xa = np.asarray(x, dtype=float)
    out = np.exp(params.c * np.multiply.outer(xa, rule.nodes)) @ (rule.weights * fv)
    return float(out) if xa.ndim == 0 else out


def trace_exact(params: ProblemParams) -> float:
    """Sum of all eigenvalues, ``B(1/2, a+1) 1F1(1/2; a+3/2; c)``."""
    a = params.alpha
    return beta(0.5, a + 1).value * kummer_1f1(0.5, a + 1.5, params.c)


def nystrom_spectrum(params: ProblemParams, m: int) -> NystromSpectrum:
    """Eigenvalues of the kernel discretized on an m-point Gauss-Jacobi rule."""
    if m < 40:
        raise ValueError(f"Nystrom oracle needs m >= 40, got {m}")
    rule = gauss_jacobi_rule(params.alpha, m)
    sw = np.sqrt(rule.weights)
    mat = sw[:, None] * np.exp(params.c * np.outer(rule.nodes, rule.nodes)) * sw[None, :]
    try:
        vals = np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise RuntimeError("Nystrom eigensolve failed") from exc
    return NystromSpectrum(m, vals[::-1].copy())


# -- assembly --------------------------------------------------------------------------


def default_n_spec(params: ProblemParams, nu0: float) -> int:
    """Smallest ``N`` whose decay bound is below ``1e-30 nu_0``, capped at 120."""
    from .bounds import nu_upper_bound

    for n in range(1, N_SPEC_CAP + 1):
        b = nu_upper_bound(params, n)
        if b is not None and b < 1e-30 * nu0:
            return n
    return N_SPEC_CAP


def compute_spectrum(params: ProblemParams, n_max: int | None = None) -> Spectrum:
    if n_max is None:
        first = compute_eigenpairs(params, 0)[0]
        n_max = default_n_spec(params, eigenvalue_nu_gram(first)[0])
    pairs = compute_eigenpairs(params, n_max)
    gram = GramRows(params, int(max(p.degrees[-1] for p in pairs)))
    nus = [eigenvalue_nu_gram(p, gram) for p in pairs]
    nu = np.array([v for v, _ in nus])
    log_nu = np.array([lv for _, lv in nus])
    return Spectrum(params, pairs, nu, log_nu)
