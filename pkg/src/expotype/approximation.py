"""Best approximation by bounded-spectrum vectors and the direct bounds.

The distance from a trajectory to entire solutions of exponential type at
most r equals the spectral tail norm beyond r.  The Jackson-type bounds
tie that distance to moduli of smoothness; the Bernstein-type bound goes
the other way for vectors that already have finite type.  Each bound is
materialized as an InequalityReport so suites can assert "holds" wholesale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .serialize import csv_text
from .spectral import SpectralVector, norm, vector_type

__all__ = [
    "HOLDS_TOLERANCE",
    "DecayCurve",
    "InequalityReport",
    "make_report",
    "jackson_constant",
    "best_approx",
    "modulus",
    "jackson_check",
    "derivative_jackson_check",
    "bernstein_check",
    "decay_curve",
    "curve_to_csv",
    "report_record",
]

HOLDS_TOLERANCE = 1e-12

_JACKSON_BASE = 1.0 - math.exp(-1.0)


def jackson_constant(k: int) -> float:
    """c_k = (1 - e^-1)^(-k), the constant in the k-th Jackson bound.

    The derivation chain bounds the squared modulus from below by
    (1 - e^-1)^(2k) times the squared tail, which forces the inverse
    power here; with the exponent flipped the bound fails already for a
    single mode sitting just past the cutoff.
    """
    if k < 0:
        raise ValidationError(f"order must be >= 0, got {k}")
    return _JACKSON_BASE ** (-k)


@dataclass(frozen=True, eq=False)
class InequalityReport:
    """One checked inequality: holds iff lhs <= rhs + tol*max(1, |rhs|)."""

    name: str
    lhs: float
    rhs: float
    margin: float
    holds: bool


def make_report(name: str, lhs: float, rhs: float) -> InequalityReport:
    lhs = float(lhs)
    rhs = float(rhs)
    holds = lhs <= rhs + HOLDS_TOLERANCE * max(1.0, abs(rhs))
    return InequalityReport(name=name, lhs=lhs, rhs=rhs, margin=rhs - lhs, holds=holds)


def report_record(report: InequalityReport) -> dict:
    """Plain dict in the serialized field order."""
    return {
        "name": report.name,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "margin": report.margin,
        "holds": report.holds,
    }


def best_approx(f: SpectralVector, r: float) -> float:
    """Tail norm past r: distance to vectors supported on eigenvalues <= r."""
    tail = f.spectrum.eigenvalues > r
    return float(np.linalg.norm(f.coeffs[tail]))


def modulus(f: SpectralVector, k: int, t: float) -> float:
    """Modulus of smoothness: sup over h in [0, t] of the k-th difference norm.

    Each factor (1 - exp(-lam*h)) is nondecreasing in h, so the sup is
    attained at h = t and the closed form is
    sqrt(sum (1 - exp(-lam*t))^(2k) f_k^2).  k = 0 returns the plain norm.
    """
    if k < 0:
        raise ValidationError(f"order must be >= 0, got {k}")
    if not (t > 0):
        raise ValidationError(f"step bound must be positive, got {t}")
    if k == 0:
        return norm(f)
    factors = (-np.expm1(-f.spectrum.eigenvalues * t)) ** k
    return float(np.linalg.norm(factors * f.coeffs))


def jackson_check(f: SpectralVector, k: int, r: float) -> InequalityReport:
    """Direct bound: tail norm past r vs c_k * modulus(f, k, 1/r)."""
    if k < 1:
        raise ValidationError(f"order must be >= 1, got {k}")
    if not (r > 0):
        raise ValidationError(f"cutoff must be positive, got {r}")
    lhs = best_approx(f, r)
    rhs = jackson_constant(k) * modulus(f, k, 1.0 / r)
    return make_report(f"jackson[k={k},r={r:g}]", lhs, rhs)


def derivative_jackson_check(
    f: SpectralVector, n: int, k: int, r: float
) -> InequalityReport:
    """Derivative form of the direct bound.

    Compares the tail norm with c_(k+n) / r^n times the modulus of the
    n-th derivative; the modulus of the derivative trajectory equals the
    modulus of the power-weighted vector lam^n f_k since norms drop signs.
    k = 0 degenerates to the pure derivative bound c_n / r^n * ||A^n f||.
    """
    if n < 0:
        raise ValidationError(f"derivative order must be >= 0, got {n}")
    if k < 0:
        raise ValidationError(f"difference order must be >= 0, got {k}")
    if not (r > 0):
        raise ValidationError(f"cutoff must be positive, got {r}")
    lam = f.spectrum.eigenvalues
    derivative_vector = f.with_coeffs(lam**n * f.coeffs) if n > 0 else f
    if k == 0:
        mod = norm(derivative_vector)
    else:
        mod = modulus(derivative_vector, k, 1.0 / r)
    lhs = best_approx(f, r)
    rhs = jackson_constant(k + n) / r**n * mod
    return make_report(f"derivative_jackson[n={n},k={k},r={r:g}]", lhs, rhs)


def bernstein_check(f: SpectralVector, h: float, k: int, n: int) -> InequalityReport:
    """Inverse-side bound for finite-type vectors.

    The k-th difference of the n-th derivative is bounded by
    (sigma*h)^k * sigma^n * ||f|| with sigma the type of f; k = 0 is the
    classical derivative bound ||A^n f|| <= sigma^n ||f||.
    """
    if not (h > 0):
        raise ValidationError(f"step must be positive, got {h}")
    if k < 0 or n < 0:
        raise ValidationError(f"orders must be >= 0, got k={k}, n={n}")
    sigma = vector_type(f)
    lam = f.spectrum.eigenvalues
    factors = (-np.expm1(-lam * h)) ** k * lam**n
    lhs = float(np.linalg.norm(factors * f.coeffs))
    rhs = (sigma * h) ** k * sigma**n * norm(f)
    return make_report(f"bernstein[h={h:g},k={k},n={n}]", lhs, rhs)


@dataclass(frozen=True, eq=False)
class DecayCurve:
    """Samples (r, E_r): tail norms on a strictly increasing positive grid."""

    r: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        values = np.array(self.values, dtype=float)
        if r.ndim != 1 or r.size == 0 or values.shape != r.shape:
            raise ValidationError("curve needs matching 1-D r and value arrays")
        if not np.all(np.isfinite(r)) or not np.all(np.isfinite(values)):
            raise ValidationError("curve samples must be finite")
        if r[0] <= 0 or np.any(np.diff(r) <= 0):
            raise ValidationError("r grid must be positive and strictly increasing")
        if np.any(values < 0):
            raise ValidationError("decay values must be >= 0")
        if np.any(np.diff(values) > 0):
            raise ValidationError("decay values must be nonincreasing")
        r.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.r.size


def decay_curve(f: SpectralVector, r_grid) -> DecayCurve:
    """Sample the tail norm on a strictly increasing positive grid.

    Tail sums are taken from one suffix cumulative sum so the sampled
    values are nonincreasing exactly, not merely up to rounding.
    """
    r = np.asarray(r_grid, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValidationError("r grid must be a nonempty 1-D sequence")
    if r[0] <= 0 or np.any(np.diff(r) <= 0):
        raise ValidationError("r grid must be positive and strictly increasing")
    squares = f.coeffs**2
    suffix = np.concatenate([np.cumsum(squares[::-1])[::-1], [0.0]])
    first_tail_index = np.searchsorted(f.spectrum.eigenvalues, r, side="right")
    values = np.sqrt(suffix[first_tail_index])
    return DecayCurve(r, values)


def curve_to_csv(curve: DecayCurve) -> str:
    return csv_text("r,E_r", zip(curve.r.tolist(), curve.values.tolist()))
