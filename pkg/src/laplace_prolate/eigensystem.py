"""Parity-split tridiagonal eigensystem of the commuting differential operator.

In the orthonormal Jacobi basis the operator ``-D_0 - c^2 x^2`` only couples
degrees ``k`` and ``k +- 2``, so even and odd degrees are solved separately.
The eigenvalues are ``chi_n`` and the eigenvectors are the Jacobi coefficients
``d_k^n`` of the eigenfunctions.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .specfun import jacobi_recurrence, jacobi_value_at_one

log = logging.getLogger(__name__)

MAX_TRUNCATION = 4096
TAIL_TOLERANCE = 1e-14


class TruncationError(RuntimeError):
    """The Jacobi expansion was cut off before the coefficients decayed."""


@dataclass(frozen=True)
class ProblemParams:
    c: float
    alpha: float

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"c must be a positive finite number, got {self.c}")
        if not self.alpha > -1:
            raise ValueError(f"alpha must be > -1, got {self.alpha}")


def _parity(p) -> int:
    if p in (0, "even"):
        return 0
    if p in (1, "odd"):
        return 1
    raise ValueError(f"parity must be 'even'/'odd' or 0/1, got {p!r}")


@dataclass(frozen=True)
class TridiagonalSystem:
    params: ProblemParams
    parity: int
    diag: np.ndarray
    offdiag: np.ndarray

    @property
    def size(self) -> int:
        return len(self.diag)

    @property
    def degrees(self) -> np.ndarray:
        return self.parity + 2 * np.arange(self.size)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True)
class EigenPair:
    """One eigenfunction: ``phi_n = sum_j coeffs[j] * P~_{parity + 2j}``."""

    n: int
    chi: float
    parity: int
    coeffs: np.ndarray
    params: ProblemParams
    trunc_order: int = field(default=0)

    @property
    def degrees(self) -> np.ndarray:
        return self.parity + 2 * np.arange(len(self.coeffs))

    def dense_coeffs(self) -> np.ndarray:
        """Coefficients over all degrees ``0..max degree`` (zeros for the other parity)."""
        out = np.zeros(self.degrees[-1] + 1)
        out[self.degrees] = self.coeffs
        return out

    def value_at_one(self) -> float:
        return float(sum(d * jacobi_value_at_one(self.params.alpha, int(k)).value
                         for d, k in zip(self.coeffs, self.degrees)))


def build_tridiagonal(params: ProblemParams, parity, size: int) -> TridiagonalSystem:
    """Matrix of ``-D_0 - c^2 x^2`` on degrees ``parity, parity+2, ...``.

    Multiplication by ``x^2`` is the square of the Jacobi matrix, so the
    entries are ``k(k+2a+1) - c^2 (a_k^2 + a_{k+1}^2)`` on the diagonal and
    ``-c^2 a_{k+1} a_{k+2}`` between ``k`` and ``k+2``. Written this way the
    closed-form rational expressions lose their removable singularities
    (``a = 1/2`` at ``k = 0``, ``a = -1/2`` at ``k = 1``).
    """
    p = _parity(parity)
    if size < 2:
        raise ValueError(f"size must be >= 2, got {size}")
    a, c2 = params.alpha, params.c ** 2
    k = p + 2 * np.arange(size)
    rec = jacobi_recurrence(a, int(k[-1]) + 2)
    diag = k * (k + 2 * a + 1) - c2 * (rec[k] ** 2 + rec[k + 1] ** 2)
    off = -c2 * rec[k[:-1] + 1] * rec[k[:-1] + 2]
    return TridiagonalSystem(params, p, diag, off)


def _ratio_vector(diag: np.ndarray, off: np.ndarray, chi: float, peak: int) -> np.ndarray:
    """Eigenvector by continued fractions run inwards from both ends.

    Each side is the minimal solution of the three-term recurrence in its
    direction, so tiny far-from-peak entries come out with relative (not just
    absolute) accuracy.
    """
    n = len(diag)
    d = np.zeros(n)
    d[peak] = 1.0
    rho = 0.0  # d_j / d_{j+1}
    below = np.zeros(n)
    for j in range(peak):
        den = diag[j] - chi + (off[j - 1] * rho if j > 0 else 0.0)
        rho = -off[j] / den
        below[j] = rho
    for j in range(peak - 1, -1, -1):
        d[j] = below[j] * d[j + 1]
    sig = 0.0  # d_{j+1} / d_j
    above = np.zeros(n)
    for j in range(n - 2, peak - 1, -1):
        den = diag[j + 1] - chi + (off[j + 1] * sig if j + 1 < n - 1 else 0.0)
        sig = -off[j] / den
        above[j] = sig
    for j in range(peak, n - 1):
        d[j + 1] = above[j] * d[j]
    return d / np.linalg.norm(d)


def solve_lowest(system: TridiagonalSystem, count: int) -> list[tuple[float, np.ndarray]]:
    """The ``count`` smallest eigenvalues with orthonormal eigenvectors."""
    if not 1 <= count <= system.size:
        raise ValueError(f"count must be in [1, {system.size}], got {count}")
    chis, vecs = eigh_tridiagonal(system.diag, system.offdiag, select="i",
                                  select_range=(0, count - 1))
    if np.any(np.diff(chis) <= 0):
        raise ArithmeticError("eigenvalues are not simple")
    tail_start = system.size - max(1, system.size // 4)
    out = []
    for i, chi in enumerate(chis):
        v = vecs[:, i]
        peak = int(np.argmax(np.abs(v)))
        refined = _ratio_vector(system.diag, system.offdiag, chi, peak)
        if refined @ v < 0:
            refined = -refined
        if not (np.all(np.isfinite(refined)) and np.max(np.abs(refined - v)) < 1e-8):
            log.warning("ratio refinement rejected for eigenvalue %d of parity %d", i, system.parity)
            refined = v / np.linalg.norm(v)
        if np.max(np.abs(refined[tail_start:])) >= TAIL_TOLERANCE:
            raise TruncationError(
                f"eigenvector {i} (parity {system.parity}) has not decayed within size "
                f"{system.size}; enlarge the truncation order")
        out.append((float(chi), refined))
    return out


def _initial_truncation(params: ProblemParams, n_max: int) -> int:
    return max(2 * n_max + 30, math.ceil(math.e * params.c / 2) + 40)


def _parity_sizes(trunc: int) -> tuple[int, int]:
    return trunc // 2 + 1, (trunc - 1) // 2 + 1


def _solve_both(params: ProblemParams, n_max: int, trunc: int):
    counts = (n_max // 2 + 1, (n_max + 1) // 2)
    sols = []
    for p, (size, count) in enumerate(zip(_parity_sizes(trunc), counts)):
        sols.append(solve_lowest(build_tridiagonal(params, p, size), count) if count else [])
    return sols


def _solve_adequate(params: ProblemParams, n_max: int):
    trunc = _initial_truncation(params, n_max)
    while True:
        try:
            return trunc, _solve_both(params, n_max, trunc)
        except TruncationError:
            trunc *= 2
            if trunc > MAX_TRUNCATION:
                raise TruncationError(
                    f"truncation order exceeded {MAX_TRUNCATION} for {params}, n_max={n_max}")


def choose_truncation(params: ProblemParams, n_max: int) -> int:
    """Truncation order: a decay-based floor, doubled until the tails are negligible."""
    return _solve_adequate(params, n_max)[0]


def compute_eigenpairs(params: ProblemParams, n_max: int) -> list[EigenPair]:
    """Eigenpairs for ``n = 0..n_max``; ``phi_n(1) > 0`` fixes the signs."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    trunc, sols = _solve_adequate(params, n_max)
    pairs = []
    for n in range(n_max + 1):
        p = n % 2
        chi, vec = sols[p][n // 2]
        degrees = p + 2 * np.arange(len(vec))
        at_one = np.array([jacobi_value_at_one(params.alpha, int(k)).value for k in degrees])
        if vec @ at_one < 0:
            vec = -vec
        vec.setflags(write=False)
        pairs.append(EigenPair(n, chi, p, vec, params, trunc))
    chis = [pr.chi for pr in pairs]
    if any(b <= a for a, b in zip(chis, chis[1:])):
        raise ArithmeticError("even/odd eigenvalues do not interlace")
    return pairs
