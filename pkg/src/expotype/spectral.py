"""Discrete spectral model of a nonnegative self-adjoint operator.

The operator is represented by its ascending eigenvalue sequence alone;
vectors are real coefficient sequences over the corresponding orthonormal
eigenbasis.  Every operation acts diagonally on the coefficients, so all
the functional calculus needed here (powers, projections, resolvents,
exponentials) reduces to elementwise arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import NumericalError, ValidationError
from .growth import GrowthSequence
from .serialize import csv_text

__all__ = [
    "DiscreteSpectrum",
    "SpectralVector",
    "make_spectrum",
    "project",
    "apply_power",
    "norm",
    "sobolev_norm",
    "vector_type",
    "log_power_norms",
    "class_norm",
    "vector_to_csv",
    "vector_from_csv",
]

CLASS_NORM_MAX_TERMS = 10_000
CLASS_NORM_DECAY_RUN = 10


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(f"{name} must be a nonempty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteSpectrum:
    """Ascending nonnegative eigenvalues standing in for the operator."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.eigenvalues, "eigenvalues")
        if np.any(arr < 0):
            idx = int(np.argmax(arr < 0))
            raise ValidationError(f"negative eigenvalue at index {idx}")
        if np.any(np.diff(arr) < 0):
            raise ValidationError("eigenvalues must be sorted nondecreasing")
        object.__setattr__(self, "eigenvalues", arr)

    def __len__(self) -> int:
        return self.eigenvalues.size

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])


def make_spectrum(eigenvalues) -> DiscreteSpectrum:
    """Validate and sort an eigenvalue list into a DiscreteSpectrum.

    Input order is not preserved; the negative-entry check reports the
    index in the order the caller supplied.
    """
    arr = _frozen_array(eigenvalues, "eigenvalues")
    if np.any(arr < 0):
        idx = int(np.argmax(arr < 0))
        raise ValidationError(f"negative eigenvalue at index {idx}")
    return DiscreteSpectrum(np.sort(arr))


@dataclass(frozen=True, eq=False)
class SpectralVector:
    """Finitely supported coefficient vector over the eigenbasis.

    tags carries provenance markers (currently only the backward-evolution
    tag set by the semigroup module); it never affects arithmetic.
    """

    spectrum: DiscreteSpectrum
    coeffs: np.ndarray
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        arr = _frozen_array(self.coeffs, "coeffs")
        if arr.size != len(self.spectrum):
            raise ValidationError(
                f"coefficient length {arr.size} does not match spectrum size {len(self.spectrum)}"
            )
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "tags", tuple(self.tags))

    def with_coeffs(self, coeffs, tags: tuple[str, ...] = ()) -> "SpectralVector":
        """New vector over the same spectrum."""
        return SpectralVector(self.spectrum, coeffs, tags)


def project(f: SpectralVector, r: float) -> SpectralVector:
    """Spectral projection onto eigenvalues <= r (inclusive boundary)."""
    mask = f.spectrum.eigenvalues <= r
    return f.with_coeffs(np.where(mask, f.coeffs, 0.0))


def apply_power(f: SpectralVector, n: int) -> SpectralVector:
    """Apply the n-th operator power; acts as lam^n on each coefficient.

    n = 0 is the identity even on zero eigenvalues (0^0 = 1 convention).
    """
    if n < 0:
        raise ValidationError(f"power must be >= 0, got {n}")
    if n == 0:
        return f
    return f.with_coeffs(f.spectrum.eigenvalues**n * f.coeffs)


def norm(f: SpectralVector) -> float:
    """Euclidean norm of the coefficients."""
    return float(np.linalg.norm(f.coeffs))


def sobolev_norm(f: SpectralVector, s: int) -> float:
    """Norm on the scale generated by operator powers.

    s > 0: (sum (1 + lam^(2s)) f_k^2)^(1/2), the graph norm of the s-th
    power; s < 0: (sum (1 + lam)^(2s) f_k^2)^(1/2), the norm of the dual
    (negative) space realized through the resolvent (A + I)^s; s = 0 is
    the plain norm.
    """
    s = int(s)
    if s == 0:
        return norm(f)
    lam = f.spectrum.eigenvalues
    if s > 0:
        weights = 1.0 + lam ** (2 * s)
    else:
        weights = (1.0 + lam) ** (2 * s)
    return float(math.sqrt(np.sum(weights * f.coeffs**2)))


def vector_type(f: SpectralVector) -> float:
    """Top of the spectral support: the exponential type of the vector."""
    support = f.coeffs != 0.0
    if not np.any(support):
        raise ValidationError("type undefined for zero vector")
    return float(np.max(f.spectrum.eigenvalues[support]))


def log_power_norms(f: SpectralVector, n_max: int) -> np.ndarray:
    """ln of the power norms ||A^n f|| for n = 0..n_max, in log space.

    Zero eigenvalues contribute only to n = 0; when nothing else is
    supported the entries for n >= 1 are -inf.
    """
    if n_max < 0:
        raise ValidationError(f"n_max must be >= 0, got {n_max}")
    lam = f.spectrum.eigenvalues
    active = (f.coeffs != 0.0) & (lam > 0.0)
    out = np.full(n_max + 1, -np.inf)
    out[0] = math.log(norm(f)) if np.any(f.coeffs != 0.0) else -np.inf
    if np.any(active):
        log_lam = np.log(lam[active])
        log_c2 = 2.0 * np.log(np.abs(f.coeffs[active]))
        ns = np.arange(1, n_max + 1)
        out[1:] = 0.5 * logsumexp(
            2.0 * ns[:, None] * log_lam[None, :] + log_c2[None, :], axis=1
        )
    return out


def class_norm(f: SpectralVector, m: GrowthSequence, alpha: float) -> float:
    """sup over n of ||A^n f|| / (alpha^n * m_n).

    The scan stops once the term sequence has been nonincreasing for
    CLASS_NORM_DECAY_RUN consecutive steps (finite support makes the
    ratio eventually monotone whenever the sup is finite); if that never
    happens within CLASS_NORM_MAX_TERMS the sup is declared divergent.
    """
    if not (alpha > 0):
        raise ValidationError(f"alpha must be positive, got {alpha}")
    lam = f.spectrum.eigenvalues
    active = (f.coeffs != 0.0) & (lam > 0.0)
    log_lam = np.log(lam[active]) if np.any(active) else None
    log_c2 = 2.0 * np.log(np.abs(f.coeffs[active])) if np.any(active) else None
    log_alpha = math.log(alpha)

    def log_ratio(n: int) -> float:
        if n == 0:
            value = norm(f)
            log_norm_n = math.log(value) if value > 0 else -math.inf
        elif log_lam is None:
            log_norm_n = -math.inf
        else:
            log_norm_n = 0.5 * float(logsumexp(2.0 * n * log_lam + log_c2))
        return log_norm_n - n * log_alpha - m.log_m(n)

    cap = CLASS_NORM_MAX_TERMS
    if m.max_index is not None:
        cap = min(cap, m.max_index)
    best = -math.inf
    prev = math.inf
    decay_run = 0
    for n in range(cap + 1):
        current = log_ratio(n)
        best = max(best, current)
        decay_run = decay_run + 1 if current <= prev else 0
        prev = current
        if decay_run >= CLASS_NORM_DECAY_RUN:
            return math.exp(best)
    raise NumericalError(
        f"class norm diverges: ||A^n f|| / (alpha^n m_n) has not settled after {cap} powers"
    )


def vector_to_csv(f: SpectralVector) -> str:
    """Two-column text form: header "lambda,coeff", ascending eigenvalues."""
    rows = zip(f.spectrum.eigenvalues.tolist(), f.coeffs.tolist())
    return csv_text("lambda,coeff", rows)


def vector_from_csv(text: str) -> SpectralVector:
    """Parse the vector_to_csv format back into a SpectralVector."""
    lines = [line for line in text.strip().splitlines() if line.strip()]
    if not lines or lines[0].strip() != "lambda,coeff":
        raise ValidationError('expected header line "lambda,coeff"')
    lams, coeffs = [], []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            raise ValidationError(f"line {i}: expected two comma-separated fields")
        try:
            lams.append(float(parts[0]))
            coeffs.append(float(parts[1]))
        except ValueError as exc:
            raise ValidationError(f"line {i}: {exc}") from exc
    return SpectralVector(DiscreteSpectrum(np.asarray(lams)), np.asarray(coeffs))
