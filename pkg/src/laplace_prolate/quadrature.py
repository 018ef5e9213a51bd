"""Gauss-Jacobi rules for the weight (1 - x^2)^alpha on [-1, 1]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .specfun import beta, jacobi_recurrence

DEFAULT_POINTS = 400


@dataclass(frozen=True)
class QuadRule:
    alpha: float
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))

    def norm(self, values) -> float:
        return math.sqrt(float(np.dot(self.weights, np.asarray(values) ** 2)))


def total_mass(alpha: float) -> float:
    """``int_{-1}^{1} (1 - x^2)^alpha dx = 2^{2a+1} B(a+1, a+1)``."""
    return math.exp((2 * alpha + 1) * math.log(2.0) + beta(alpha + 1, alpha + 1).log_abs)


def gauss_jacobi_rule(alpha: float, m: int) -> QuadRule:
    """m-point Gauss rule by the Golub-Welsch construction.

    The rule is symmetrized afterwards so that nodes and weights are exactly
    mirror images, which the eigensolver only delivers to rounding.
    """
    if not alpha > -1:
        raise ValueError(f"alpha must be > -1, got {alpha}")
    if m < 1:
        raise ValueError(f"need at least one node, got m={m}")
    mass = total_mass(alpha)
    if m == 1:
        return QuadRule(alpha, np.zeros(1), np.array([mass]))
    off = jacobi_recurrence(alpha, m - 1)[1:]
    try:
        nodes, vecs = eigh_tridiagonal(np.zeros(m), off)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - never seen for m <= 2000
        raise RuntimeError(f"Golub-Welsch eigensolve failed for m={m}") from exc
    weights = mass * vecs[0] ** 2
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    if m % 2:
        nodes[m // 2] = 0.0
    return QuadRule(alpha, nodes, weights)


def inner_product(f: Callable, g: Callable, rule: QuadRule) -> float:
    """Weighted inner product ``<f, g>`` evaluated on ``rule``."""
    fv = np.asarray(f(rule.nodes), dtype=float)
    gv = np.asarray(g(rule.nodes), dtype=float)
    if not (np.all(np.isfinite(fv)) and np.all(np.isfinite(gv))):
        raise FloatingPointError("integrand is not finite at a quadrature node")
    return float(np.dot(rule.weights, fv * gv))
