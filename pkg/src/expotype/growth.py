"""Growth sequences m_n and their associated series tau(lam) = sum lam^n / m_n.

A growth sequence fixes a smoothness scale: m_n = n! marks the analytic
class, m_n = n^(n*beta) the Gevrey class with index beta, and a tabulated
sequence covers everything else at desk scale.  All values are carried in
log space; n! and n^(n*beta) overflow double precision near n = 170.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import NumericalError, ValidationError

__all__ = [
    "GrowthSequence",
    "RatioGrowthBound",
    "log_tau",
    "reciprocal_decay",
    "dominates_geometric",
    "ratio_growth_bound",
]

TAU_TERM_CUTOFF = 1e-17
TAU_MAX_TERMS = 100_000
TAU_DECAY_RUN = 10

_GEOMETRIC_DOMINATION_HINT = (
    "the sequence must dominate every geometric sequence "
    "(for each alpha > 0 there must be c > 0 with m_n >= c * alpha^n)"
)


@dataclass(frozen=True, eq=False)
class GrowthSequence:
    """Nondecreasing sequence m_n with m_0 = 1, stored as ln(m_n).

    kind is one of "factorial", "gevrey" (m_n = n^(n*beta)), or
    "tabulated" (explicit finite list).
    """

    kind: str
    beta: float | None = None
    log_values: np.ndarray | None = None

    @classmethod
    def factorial(cls) -> "GrowthSequence":
        return cls(kind="factorial")

    @classmethod
    def gevrey(cls, beta: float) -> "GrowthSequence":
        if not (beta > 0):
            raise ValidationError(f"gevrey index must be positive, got {beta}")
        return cls(kind="gevrey", beta=float(beta))

    @classmethod
    def tabulated(cls, values: Sequence[float]) -> "GrowthSequence":
        arr = np.array(values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValidationError("tabulated sequence must be a nonempty 1-D list")
        if arr[0] != 1.0:
            raise ValidationError(f"m_0 must equal 1, got {arr[0]}")
        if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
            raise ValidationError("tabulated sequence must be positive and finite")
        if np.any(np.diff(arr) < 0):
            raise ValidationError("tabulated sequence must be nondecreasing")
        logs = np.log(arr)
        logs.setflags(write=False)
        return cls(kind="tabulated", log_values=logs)

    @property
    def max_index(self) -> int | None:
        """Largest n with a defined m_n, or None when unbounded."""
        if self.kind == "tabulated":
            assert self.log_values is not None
            return self.log_values.size - 1
        return None

    def log_m(self, n: int) -> float:
        """ln(m_n)."""
        if n < 0:
            raise ValidationError(f"sequence index must be >= 0, got {n}")
        if self.kind == "factorial":
            return math.lgamma(n + 1)
        if self.kind == "gevrey":
            assert self.beta is not None
            return self.beta * n * math.log(n) if n > 0 else 0.0
        assert self.log_values is not None
        if n >= self.log_values.size:
            raise ValidationError(
                f"tabulated sequence has {self.log_values.size} entries, index {n} requested"
            )
        return float(self.log_values[n])

    def log_m_upto(self, n_max: int) -> np.ndarray:
        """Array of ln(m_n) for n = 0..n_max."""
        return np.array([self.log_m(n) for n in range(n_max + 1)])


def log_tau(m: GrowthSequence, lam: float) -> float:
    """ln of tau(lam) = sum_n lam^n / m_n, summed in log space.

    Terms are accumulated until they have decreased for TAU_DECAY_RUN
    consecutive steps and the current term is below TAU_TERM_CUTOFF times
    the partial sum; the hard cap is TAU_MAX_TERMS.  tau(lam) >= 1 for
    lam >= 0, so the result is always >= 0.
    """
    lam = float(lam)
    if lam < 0:
        raise ValidationError(f"tau is defined for lam >= 0, got {lam}")
    if lam == 0.0:
        return 0.0
    log_lam = math.log(lam)
    cap = TAU_MAX_TERMS
    if m.max_index is not None:
        cap = min(cap, m.max_index)
    acc = 0.0  # ln of the n = 0 term: lam^0 / m_0 = 1
    prev_term = 0.0
    decay_run = 0
    for n in range(1, cap + 1):
        term = n * log_lam - m.log_m(n)
        acc = np.logaddexp(acc, term)
        decay_run = decay_run + 1 if term <= prev_term else 0
        prev_term = term
        if decay_run >= TAU_DECAY_RUN and term < math.log(TAU_TERM_CUTOFF) + acc:
            return float(acc)
    if m.max_index is not None and prev_term < math.log(TAU_TERM_CUTOFF) + acc:
        # Short table, but the terms already reached the negligible regime.
        return float(acc)
    raise NumericalError(
        f"series for tau({lam}) did not converge within {cap} terms; "
        + _GEOMETRIC_DOMINATION_HINT
    )


def reciprocal_decay(m: GrowthSequence, alpha: float, r: float) -> float:
    """1 / tau(alpha * r), the decay rate attached to the class of m."""
    if not (alpha > 0):
        raise ValidationError(f"alpha must be positive, got {alpha}")
    if not (r > 0):
        raise ValidationError(f"r must be positive, got {r}")
    return math.exp(-log_tau(m, alpha * r))


def dominates_geometric(
    m: GrowthSequence, alphas: Sequence[float], n_max: int
) -> list[bool]:
    """Per-alpha verdicts of whether m_n >= c * alpha^n for some c > 0.

    Scans the log margin ln(m_n) - n*ln(alpha) for n <= n_max and reports
    True when its running minimum has stabilized (the minimum is attained
    in the first half of the scan).  Sequences whose turning point lies
    beyond n_max report False; pick n_max comfortably past alpha.
    """
    if n_max < 1:
        raise ValidationError(f"scan length must be >= 1, got {n_max}")
    if m.max_index is not None and n_max > m.max_index:
        raise ValidationError(
            f"scan length {n_max} exceeds tabulated length {m.max_index}"
        )
    log_m = m.log_m_upto(n_max)
    ns = np.arange(n_max + 1)
    verdicts = []
    for alpha in alphas:
        if not (alpha > 0):
            raise ValidationError(f"alpha must be positive, got {alpha}")
        margin = log_m - ns * math.log(alpha)
        verdicts.append(int(np.argmin(margin)) <= n_max // 2)
    return verdicts


class RatioGrowthBound(NamedTuple):
    holds: bool
    c: float
    h: float


def ratio_growth_bound(m: GrowthSequence, n_max: int) -> RatioGrowthBound:
    """Fit the bound m_(n+1) <= c * h^n * m_n with h > 1 on n <= n_max.

    The witness uses ln(h) = max over n >= 1 of ln(m_(n+1)/m_n) / n, which
    bounds every scanned ratio with c >= 1.  The bound is declared failed
    when that slope still peaks in the second half of the scan, i.e. the
    ratios grow faster than geometrically as far as the scan can see.
    """
    if n_max < 4:
        raise ValidationError(f"scan length must be >= 4, got {n_max}")
    if m.max_index is not None and n_max + 1 > m.max_index:
        raise ValidationError(
            f"scan needs m_n up to n = {n_max + 1}, tabulated length is {m.max_index}"
        )
    log_m = m.log_m_upto(n_max + 1)
    gaps = np.diff(log_m)  # ln(m_(n+1)/m_n), n = 0..n_max
    slopes = gaps[1:] / np.arange(1, n_max + 1)
    peak = int(np.argmax(slopes)) + 1  # index n of the peak slope
    if peak > n_max // 2:
        return RatioGrowthBound(False, math.nan, math.nan)
    log_h = max(float(np.max(slopes)), 1e-9)  # keep h strictly above 1
    excess = gaps - np.arange(n_max + 1) * log_h
    c = math.exp(max(float(np.max(excess)), 0.0))
    return RatioGrowthBound(True, c, math.exp(log_h))
