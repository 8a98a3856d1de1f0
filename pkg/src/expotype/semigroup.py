"""The solution operator exp(-At) and the calculus built on it.

A trajectory y(t) = exp(-At) f is determined by its initial vector, so a
solution handle just wraps one.  Evolution, time derivatives, finite
differences, and the entire extension to complex arguments all act
diagonally on the coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import ValidationError
from .spectral import SpectralVector, apply_power, norm

__all__ = [
    "BACKWARD_TAG",
    "MAX_BINOMIAL_ORDER",
    "SolutionHandle",
    "evolve",
    "derivative",
    "sup_norm",
    "derivative_sup_norm",
    "difference_power",
    "difference_power_binomial",
    "entire_eval",
    "log_entire_eval",
]

BACKWARD_TAG = "backward evolution"

# Binomial weights are computed with exact integer arithmetic; beyond this
# order the float casts of C(k, j) start losing bits.
MAX_BINOMIAL_ORDER = 60


@dataclass(frozen=True, eq=False)
class SolutionHandle:
    """Trajectory exp(-At) f, identified with its initial vector f."""

    initial: SpectralVector


def evolve(y: SolutionHandle, t: float) -> SpectralVector:
    """Coefficients exp(-lam*t) f_k at time t.

    Negative t is allowed (finite support means the trajectory extends to
    an entire function), but the result is tagged as backward evolution.
    """
    f = y.initial
    coeffs = np.exp(-f.spectrum.eigenvalues * t) * f.coeffs
    tags = (BACKWARD_TAG,) if t < 0 else ()
    return f.with_coeffs(coeffs, tags)


def derivative(y: SolutionHandle, n: int, t: float) -> SpectralVector:
    """n-th time derivative at time t: coefficients (-lam)^n exp(-lam*t) f_k."""
    if n < 0:
        raise ValidationError(f"derivative order must be >= 0, got {n}")
    if t < 0:
        raise ValidationError(f"time must be >= 0, got {t}")
    f = y.initial
    lam = f.spectrum.eigenvalues
    return f.with_coeffs((-lam) ** n * np.exp(-lam * t) * f.coeffs)


def sup_norm(y: SolutionHandle) -> float:
    """sup over t >= 0 of ||exp(-At) f||; attained at t = 0, equals ||f||."""
    return norm(y.initial)


def derivative_sup_norm(y: SolutionHandle, n: int) -> float:
    """sup over t >= 0 of the n-th derivative norm; equals ||A^n f||.

    Each coefficient magnitude lam^n exp(-lam*t) |f_k| is maximal at t = 0,
    so no time sampling is needed.
    """
    return norm(apply_power(y.initial, n))


def difference_power(y: SolutionHandle, h: float, k: int) -> SolutionHandle:
    """k-th power of the step-h difference (exp(-Ah) - I), in closed form.

    Acts diagonally as (exp(-lam*h) - 1)^k; difference_power_binomial keeps
    the expanded binomial sum as an independent cross-check.
    """
    if h < 0:
        raise ValidationError(f"step must be >= 0, got {h}")
    if k < 0:
        raise ValidationError(f"difference order must be >= 0, got {k}")
    if k == 0:
        return y
    f = y.initial
    factors = np.expm1(-f.spectrum.eigenvalues * h) ** k
    return SolutionHandle(f.with_coeffs(factors * f.coeffs))


def difference_power_binomial(y: SolutionHandle, h: float, k: int) -> SolutionHandle:
    """difference_power via the alternating binomial sum of semigroup shifts."""
    if h < 0:
        raise ValidationError(f"step must be >= 0, got {h}")
    if k < 0:
        raise ValidationError(f"difference order must be >= 0, got {k}")
    if k > MAX_BINOMIAL_ORDER:
        raise ValidationError(
            f"difference order {k} exceeds exact binomial limit {MAX_BINOMIAL_ORDER}"
        )
    if k == 0:
        return y
    f = y.initial
    lam = f.spectrum.eigenvalues
    acc = np.zeros_like(f.coeffs)
    for j in range(k + 1):
        sign = -1.0 if (k - j) % 2 else 1.0
        acc = acc + sign * float(math.comb(k, j)) * np.exp(-lam * j * h) * f.coeffs
    return SolutionHandle(f.with_coeffs(acc))


def entire_eval(y: SolutionHandle, z: complex) -> float:
    """||y(z)|| of the entire extension: sqrt(sum exp(-2*lam*Re z) f_k^2).

    Computed directly, so it can overflow to inf when -Re z times the top
    eigenvalue is extreme; log_entire_eval stays finite in that regime.
    """
    f = y.initial
    weights = np.exp(-2.0 * f.spectrum.eigenvalues * complex(z).real)
    return float(np.sqrt(np.sum(weights * f.coeffs**2)))


def log_entire_eval(y: SolutionHandle, z: complex) -> float:
    """ln ||y(z)||, stable for arguments far outside the overflow range."""
    f = y.initial
    support = f.coeffs != 0.0
    if not np.any(support):
        return -math.inf
    lam = f.spectrum.eigenvalues[support]
    log_c2 = 2.0 * np.log(np.abs(f.coeffs[support]))
    return 0.5 * float(logsumexp(-2.0 * lam * complex(z).real + log_c2))
