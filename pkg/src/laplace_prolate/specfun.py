"""Scalar special functions and symmetric Jacobi polynomial machinery.

Products of Gamma/Beta factors, powers of two and Bessel values overflow
double precision long before the series they feed have converged, so most
functions here return a :class:`LogValue` (log-magnitude plus sign).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class LogValue:
    """A real number stored as ``sign * exp(log_abs)``."""

    log_abs: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign == 0 and self.log_abs != -math.inf:
            object.__setattr__(self, "log_abs", -math.inf)

    @classmethod
    def from_float(cls, x: float) -> LogValue:
        if x == 0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_abs)
        except OverflowError:
            return self.sign * math.inf

    def __mul__(self, other: LogValue) -> LogValue:
        sign = self.sign * other.sign
        if sign == 0:
            return LogValue(-math.inf, 0)
        return LogValue(self.log_abs + other.log_abs, sign)

    def __truediv__(self, other: LogValue) -> LogValue:
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogValue")
        if self.sign == 0:
            return LogValue(-math.inf, 0)
        return LogValue(self.log_abs - other.log_abs, self.sign * other.sign)

    def __pow__(self, p: float) -> LogValue:
        if self.sign < 0:
            raise ValueError("real power of a negative LogValue")
        if self.sign == 0:
            return LogValue(-math.inf, 0) if p > 0 else LogValue(0.0, 1)
        return LogValue(p * self.log_abs, 1)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class JacobiParams:
    """Symmetric Jacobi parameter; the weight is ``(1 - x**2)**alpha``."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > -1:
            raise ValueError(f"alpha must be > -1, got {self.alpha}")

    def weight(self, x):
        return (1.0 - np.asarray(x, dtype=float) ** 2) ** self.alpha


def _check_alpha(alpha: float) -> None:
    if not alpha > -1:
        raise ValueError(f"alpha must be > -1, got {alpha}")


def log_gamma(x: float) -> float:
    """``ln Gamma(x)`` for ``x > 0``."""
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def beta(x: float, y: float) -> LogValue:
    """Beta function B(x, y) in log space."""
    if not (x > 0 and y > 0):
        raise ValueError(f"beta requires positive arguments, got ({x}, {y})")
    return LogValue(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y), 1)


def _log_bessel_series(nu: float, x: float) -> float:
    # ln of sum_m (x^2/4)^m / (m! (nu+1)_m), i.e. I_nu(x) / ((x/2)^nu / Gamma(nu+1))
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    m = 0
    while True:
        m += 1
        term *= q / (m * (m + nu))
        total += term
        if term < 1e-17 * total:
            return math.log(total)


def bessel_i(nu: float, x: float) -> LogValue:
    """Modified Bessel function ``I_nu(x)`` from its ascending series.

    Only meant for moderate arguments (``x`` up to a few hundred); the series
    is summed in linear space after factoring out the leading term.
    """
    if not nu > -1:
        raise ValueError(f"bessel_i requires nu > -1, got {nu}")
    if not x > 0:
        raise ValueError(f"bessel_i requires x > 0, got {x}")
    log_lead = nu * math.log(0.5 * x) - math.lgamma(nu + 1.0)
    return LogValue(log_lead + _log_bessel_series(nu, x), 1)


def bessel_i_scaled(nu: float, z: float, shift: float) -> LogValue:
    """``I_nu(z) / z**shift`` including the limit at ``z = 0``.

    Needed for ``I_{k+a+1/2}(z) / z^{a+1/2}``, which is ``z^k`` times an even
    entire function.
    """
    if z == 0:
        if nu == shift:
            return LogValue(-nu * LOG2 - math.lgamma(nu + 1.0), 1)
        if nu > shift:
            return LogValue(-math.inf, 0)
        raise ValueError("I_nu(z)/z**shift is unbounded at z = 0")
    lv = bessel_i(nu, z)
    return LogValue(lv.log_abs - shift * math.log(z), 1)


def _kummer_series(a: float, b: float, z: float) -> float:
    term = 1.0
    total = 1.0
    for m in range(10000):
        term *= (a + m) * z / ((b + m) * (m + 1))
        total += term
        if abs(term) < 1e-17 * abs(total):
            return total
    raise ArithmeticError("kummer_1f1 series failed to converge")


def kummer_1f1(a: float, b: float, z: float) -> float:
    """Confluent hypergeometric function 1F1(a; b; z) for ``b > a > 0``.

    The ascending series is summed directly for ``z >= 0`` (all terms
    positive). For ``z < 0`` Kummer's transformation
    ``1F1(a, b, z) = e^z 1F1(b - a, b, -z)`` turns it into a positive series.
    """
    if not a > 0:
        raise ValueError(f"kummer_1f1 requires a > 0, got {a}")
    if not b > a:
        raise ValueError(f"kummer_1f1 requires b > a, got a={a}, b={b}")
    if z == 0:
        return 1.0
    if z > 0:
        return _kummer_series(a, b, z)
    return math.exp(z) * _kummer_series(b - a, b, -z)


def log_jacobi_norm(alpha: float, k: int) -> float:
    """``ln h_k`` where ``h_k = ||P_k^{(alpha,alpha)}||^2`` in the weighted L2 norm."""
    _check_alpha(alpha)
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    head = (2 * alpha + 1) * LOG2 + 2 * math.lgamma(k + alpha + 1) - math.lgamma(k + 1)
    if k == 0:
        # (2a+1) Gamma(2a+1) = Gamma(2a+2); avoids sign trouble for a < -1/2
        return head - math.lgamma(2 * alpha + 2)
    return head - math.log(2 * k + 2 * alpha + 1) - math.lgamma(k + 2 * alpha + 1)


def jacobi_norm(alpha: float, k: int) -> LogValue:
    return LogValue(log_jacobi_norm(alpha, k), 1)


def jacobi_recurrence(alpha: float, kmax: int) -> np.ndarray:
    """Off-diagonal entries of the symmetric Jacobi matrix.

    ``x P~_k = a[k+1] P~_{k+1} + a[k] P~_{k-1}``; ``a[0] = 0`` and the
    returned array has length ``kmax + 1``.
    """
    _check_alpha(alpha)
    a = np.zeros(kmax + 1)
    if kmax >= 1:
        a[1] = math.sqrt(1.0 / (2 * alpha + 3))
    if kmax >= 2:
        k = np.arange(2, kmax + 1, dtype=float)
        a[2:] = np.sqrt(k * (k + 2 * alpha) / ((2 * k + 2 * alpha + 1) * (2 * k + 2 * alpha - 1)))
    return a


def _orthonormal_table(alpha: float, kmax: int, x: np.ndarray) -> np.ndarray:
    a = jacobi_recurrence(alpha, kmax)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = math.exp(-0.5 * log_jacobi_norm(alpha, 0))
    if kmax >= 1:
        out[1] = x * out[0] / a[1]
    for k in range(1, kmax):
        out[k + 1] = (x * out[k] - a[k] * out[k - 1]) / a[k + 1]
    return out


def jacobi_orthonormal_values(alpha: float, kmax: int, x) -> np.ndarray:
    """Orthonormal symmetric Jacobi polynomials ``P~_0..P~_kmax`` at ``x``.

    Returns shape ``(kmax + 1,)`` for scalar ``x`` and ``(kmax + 1, len(x))``
    for array input.
    """
    _check_alpha(alpha)
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1):
        raise ValueError("jacobi_orthonormal_values is defined on [-1, 1]")
    return _orthonormal_table(alpha, kmax, xa)


def jacobi_orthonormal_derivatives(alpha: float, kmax: int, x, order: int = 1) -> np.ndarray:
    """``order``-th derivatives of ``P~_0..P~_kmax`` at ``x``.

    Uses ``d/dx P_k^{(a,a)} = (k+2a+1)/2 * P_{k-1}^{(a+1,a+1)}`` applied
    ``order`` times, with the orthonormal scalings folded in.
    """
    _check_alpha(alpha)
    xa = np.asarray(x, dtype=float)
    out = np.zeros((kmax + 1,) + xa.shape)
    if order == 0:
        return jacobi_orthonormal_values(alpha, kmax, xa)
    if kmax < order:
        return out
    shifted = jacobi_orthonormal_values(alpha + order, kmax - order, xa)
    for k in range(order, kmax + 1):
        log_scale = 0.5 * (log_jacobi_norm(alpha + order, k - order) - log_jacobi_norm(alpha, k))
        log_scale += sum(math.log(0.5 * (k - i + 2 * (alpha + i) + 1)) for i in range(order))
        out[k] = math.exp(log_scale) * shifted[k - order]
    return out


def jacobi_value_at_one(alpha: float, k: int) -> LogValue:
    """``P~_k(1) = Gamma(k+a+1) / (Gamma(a+1) k! sqrt(h_k))``."""
    _check_alpha(alpha)
    log_p = math.lgamma(k + alpha + 1) - math.lgamma(alpha + 1) - math.lgamma(k + 1)
    return LogValue(log_p - 0.5 * log_jacobi_norm(alpha, k), 1)


def log_laplace_jacobi_prefactor(alpha: float, k: int) -> float:
    """ln of ``2^{2k+3a+3/2} Gamma(k+a+3/2) B(k+a+1, k+a+1) / (sqrt(h_k) k!)``.

    This is the constant in front of ``I_{k+a+1/2}(cx) / (cx)^{a+1/2}`` in the
    weighted Laplace image of ``P~_k``.
    """
    _check_alpha(alpha)
    return (
        (2 * k + 3 * alpha + 1.5) * LOG2
        + math.lgamma(k + alpha + 1.5)
        + beta(k + alpha + 1, k + alpha + 1).log_abs
        - 0.5 * log_jacobi_norm(alpha, k)
        - math.lgamma(k + 1)
    )


def laplace_image_of_jacobi(alpha: float, k: int, z: float) -> LogValue:
    """``(L P~_k)(x)`` for ``z = c x >= 0`` as a LogValue.

    For negative ``z`` use the parity ``(-1)^k``.
    """
    if z < 0:
        raise ValueError("use parity for negative arguments")
    nu = k + alpha + 0.5
    scaled = bessel_i_scaled(nu, z, alpha + 0.5)
    if scaled.sign == 0:
        return scaled
    return LogValue(log_laplace_jacobi_prefactor(alpha, k) + scaled.log_abs, 1)
