"""Smoothness classification from decay curves and entire-order estimation.

Two regression models compete on the tail of a decay curve: a power law
(ln E linear in ln r, polynomial smoothness of some finite degree) and a
stretched exponential (ln(-ln E) linear in ln r, Gevrey-style classes).
Whichever leaves the smaller normalized residual wins.  Separately, the
growth order of the entire extension of a trajectory is estimated from
the Taylor-coefficient norms ||A^n f|| / n!.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ValidationError
from .approximation import DecayCurve
from .semigroup import SolutionHandle
from .spectral import log_power_norms

__all__ = [
    "FINITE_SMOOTH",
    "INFINITELY_SMOOTH",
    "GEVREY_ROUMIEU",
    "GEVREY_BEURLING",
    "EXPONENTIAL_TYPE",
    "LineFit",
    "SmoothnessClass",
    "classify_decay",
    "order_from_beta",
    "order_from_taylor",
    "order_from_log_derivative_norms",
    "classification_record",
]

FINITE_SMOOTH = "finite_smooth"
INFINITELY_SMOOTH = "infinitely_smooth"
GEVREY_ROUMIEU = "gevrey_roumieu"
GEVREY_BEURLING = "gevrey_beurling"
EXPONENTIAL_TYPE = "exponential_type"

# Normalized RMS residual below which a straight-line fit counts as good.
RESIDUAL_GOOD_FIT = 0.05
# A fitted polynomial rate at least this steep is reported as infinitely
# smooth rather than as an (absurd) finite degree.
POLY_RATE_INFINITE = 40.0
MIN_POSITIVE_SAMPLES = 8
MIN_WINDOW_POINTS = 4

FLAG_ZERO_TAIL = "zero_tail"
FLAG_ROUMIEU_DEFAULT = "roumieu_beurling_undecided"
FLAG_DEGREE_FROM_O_RATE = "degree_from_O_rate"
FLAG_POOR_FIT = "poor_fit"


@dataclass(frozen=True)
class LineFit:
    """Least-squares line with residual = RMS error / std of the response."""

    slope: float
    intercept: float
    residual: float


@dataclass(frozen=True)
class SmoothnessClass:
    verdict: str
    degree: int | None = None
    beta: float | None = None
    alpha: float | None = None
    power_fit: LineFit | None = None
    stretch_fit: LineFit | None = None
    window: tuple[float, float, int] | None = None
    flags: tuple[str, ...] = ()


def _line_fit(x: np.ndarray, y: np.ndarray) -> LineFit:
    x_spread = float(np.std(x))
    if x_spread == 0.0:
        raise ValidationError("degenerate regression: zero variance in regressor")
    y_spread = float(np.std(y))
    if y_spread == 0.0:
        return LineFit(slope=0.0, intercept=float(np.mean(y)), residual=0.0)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    rms = math.sqrt(float(np.mean(resid**2)))
    return LineFit(slope=float(slope), intercept=float(intercept), residual=rms / y_spread)


def classify_decay(curve: DecayCurve) -> SmoothnessClass:
    """Classify the decay rate of a best-approximation curve.

    Trailing zero samples mean the vector has finite spectral support; if
    fewer than MIN_POSITIVE_SAMPLES positive samples remain the verdict is
    exponential type outright.  Otherwise both models are fit on the
    trailing half of the positive samples and the smaller normalized
    residual wins.  A single curve cannot separate the exists-alpha from
    the for-all-alpha variant of a Gevrey class, so Gevrey verdicts carry
    the undecided flag and default to the exists-alpha reading.
    """
    values = curve.values
    positive = np.nonzero(values > 0)[0]
    last_positive = int(positive[-1]) if positive.size else -1
    had_zero_tail = last_positive < len(curve) - 1
    count = last_positive + 1
    if count < MIN_POSITIVE_SAMPLES:
        if had_zero_tail:
            return SmoothnessClass(
                verdict=EXPONENTIAL_TYPE, flags=(FLAG_ZERO_TAIL,)
            )
        raise ValidationError(
            f"too few positive samples: need {MIN_POSITIVE_SAMPLES}, got {count}"
        )
    if had_zero_tail:
        # The support cutoff is in view, so tail sums just before it are
        # depleted by the spectrum that a longer expansion would carry past
        # the last positive sample.  Those samples steepen any polynomial
        # law; drop the trailing quarter (keeping the minimum) before
        # windowing.
        count -= min(count // 4, count - MIN_POSITIVE_SAMPLES)

    window = max(count // 2, MIN_WINDOW_POINTS)
    r = curve.r[count - window : count]
    e = values[count - window : count]
    x = np.log(r)
    power_fit = _line_fit(x, np.log(e))
    stretch_fit = None
    if np.all(e < 1.0):
        stretch_fit = _line_fit(x, np.log(-np.log(e)))

    window_info = (float(r[0]), float(r[-1]), int(window))
    stretch_wins = (
        stretch_fit is not None
        and stretch_fit.slope > 0
        and stretch_fit.residual < power_fit.residual
    )
    flags: list[str] = []
    if had_zero_tail:
        flags.append(FLAG_ZERO_TAIL)

    if stretch_wins:
        assert stretch_fit is not None
        beta = 1.0 / stretch_fit.slope
        alpha = math.exp(stretch_fit.intercept)
        flags.append(FLAG_ROUMIEU_DEFAULT)
        if stretch_fit.residual >= RESIDUAL_GOOD_FIT:
            flags.append(FLAG_POOR_FIT)
        return SmoothnessClass(
            verdict=GEVREY_ROUMIEU,
            beta=beta,
            alpha=alpha,
            power_fit=power_fit,
            stretch_fit=stretch_fit,
            window=window_info,
            flags=tuple(flags),
        )

    rate = -power_fit.slope
    if power_fit.residual >= RESIDUAL_GOOD_FIT:
        flags.append(FLAG_POOR_FIT)
    if rate >= POLY_RATE_INFINITE:
        return SmoothnessClass(
            verdict=INFINITELY_SMOOTH,
            power_fit=power_fit,
            stretch_fit=stretch_fit,
            window=window_info,
            flags=tuple(flags),
        )
    # The fitted slope is an O-rate; the largest compatible integer degree
    # is reported, with a nudge so an exact integer slope is not lost to
    # rounding from below.
    degree = max(int(math.floor(rate + 1e-9)), 0)
    flags.append(FLAG_DEGREE_FROM_O_RATE)
    return SmoothnessClass(
        verdict=FINITE_SMOOTH,
        degree=degree,
        power_fit=power_fit,
        stretch_fit=stretch_fit,
        window=window_info,
        flags=tuple(flags),
    )


def order_from_beta(beta: float) -> float:
    """Growth order of the entire extension from the Gevrey index: 1/(1-beta)."""
    if not (0.0 < beta < 1.0):
        raise ValidationError(f"beta must lie in (0, 1), got {beta}")
    return 1.0 / (1.0 - beta)


def _n_log_n(n: int) -> float:
    return n * math.log(n) if n > 0 else 0.0


def order_from_log_derivative_norms(log_norms) -> float:
    """Growth order from tabulated ln ||A^n f||, n = 0..N.

    The order satisfies rho = limsup n ln n / ln(n! / ||A^n f||).  The raw
    quotient converges only logarithmically (the Stirling factor e^-n and
    any geometric factor shift it by O(1/ln n)), so the estimator used
    here takes second differences of ln of the Taylor-coefficient norms
    t_n = ||A^n f|| / n!: constants and geometric factors cancel exactly,
    and rho is recovered as the ratio of second differences of n ln n to
    -ln t_n.  The limsup is proxied by the window maximum over
    n in [N/2, N-2].
    """
    log_a = np.asarray(log_norms, dtype=float)
    if log_a.ndim != 1:
        raise ValidationError("log derivative norms must be a 1-D sequence")
    n_top = log_a.size - 1
    if n_top < 10:
        raise ValidationError(f"need norms up to n >= 10, got n = {n_top}")
    ns = np.arange(n_top + 1)
    log_t = log_a - np.array([math.lgamma(n + 1) for n in ns])
    estimates = []
    for n in range(n_top // 2, n_top - 1):
        if np.any(log_t[n : n + 3] >= 0.0):
            raise NumericalError(
                "order undefined at this truncation: derivative norms grow at least "
                "factorially over the estimation window"
            )
        numerator = _n_log_n(n + 2) - 2.0 * _n_log_n(n + 1) + _n_log_n(n)
        denominator = -(log_t[n + 2] - 2.0 * log_t[n + 1] + log_t[n])
        if not (denominator > 0.0) or not math.isfinite(denominator):
            raise NumericalError(
                "order undefined at this truncation: Taylor norms are not log-concave "
                "over the estimation window"
            )
        estimates.append(numerator / denominator)
    return float(max(estimates))


def order_from_taylor(y: SolutionHandle, n_top: int) -> float:
    """Growth order of the entire extension of exp(-At) f.

    Uses ||y^(n)(0)|| = ||A^n f|| and the second-difference estimator of
    order_from_log_derivative_norms.  Finite spectral support makes every
    nonconstant trajectory entire of order 1; a vector supported only on
    the zero eigenvalue is constant and has order 0.
    """
    if n_top < 10:
        raise ValidationError(f"need n_top >= 10, got {n_top}")
    f = y.initial
    if not np.any(f.coeffs != 0.0):
        raise ValidationError("order undefined for the zero vector")
    if not np.any((f.coeffs != 0.0) & (f.spectrum.eigenvalues > 0.0)):
        return 0.0
    return order_from_log_derivative_norms(log_power_norms(f, n_top))


def _fit_record(fit: LineFit | None) -> dict | None:
    if fit is None:
        return None
    return {"slope": fit.slope, "intercept": fit.intercept, "residual": fit.residual}


def classification_record(result: SmoothnessClass) -> dict:
    """Plain dict in the serialized field order."""
    return {
        "verdict": result.verdict,
        "degree": result.degree,
        "slope": result.power_fit.slope if result.power_fit else None,
        "beta": result.beta,
        "alpha": result.alpha,
        "residuals": {
            "power": result.power_fit.residual if result.power_fit else None,
            "stretch": result.stretch_fit.residual if result.stretch_fit else None,
        },
        "window": list(result.window) if result.window else None,
        "flags": list(result.flags),
    }
