"""Dirichlet Laplacian on a q-dimensional box, at desk scale.

The spectrum and eigenfunctions are explicit: multi-indices n in
{1..N}^q give eigenvalues (pi^2/a^2) * sum(n_k^2) and product-of-sines
eigenfunctions.  Heat flow in this basis is exact, which makes the box a
complete worked example for the spectral machinery; an independent
Crank-Nicolson solver provides the outside check in one dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import solve_banded

from .errors import NumericalError, ValidationError
from .serialize import csv_text
from .spectral import DiscreteSpectrum, SpectralVector

__all__ = [
    "CubeOperator",
    "CubeSpectrumIndex",
    "WeylFit",
    "cube_spectrum",
    "eigenfunction_eval",
    "heat_solution_eval",
    "heat_profile_1d",
    "weyl_fit",
    "fd_oracle_1d",
    "cube_vector_to_csv",
]

MAX_TOTAL_MODES = 1 << 20


@dataclass(frozen=True, eq=False)
class CubeOperator:
    """Negative Laplacian with zero boundary values on (0, side)^dim."""

    dim: int
    side: float
    modes_per_axis: int

    def __post_init__(self):
        if self.dim not in (1, 2, 3, 4):
            raise ValidationError(f"dimension must be 1..4, got {self.dim}")
        if not (self.side > 0):
            raise ValidationError(f"side length must be positive, got {self.side}")
        if self.modes_per_axis < 1:
            raise ValidationError(
                f"modes per axis must be >= 1, got {self.modes_per_axis}"
            )
        if self.modes_per_axis**self.dim > MAX_TOTAL_MODES:
            raise ValidationError(
                f"mode count {self.modes_per_axis}^{self.dim} exceeds cap {MAX_TOTAL_MODES}"
            )

    @property
    def prefactor(self) -> float:
        """pi^2 / side^2, the eigenvalue scale."""
        return math.pi**2 / self.side**2


@dataclass(frozen=True, eq=False)
class CubeSpectrumIndex:
    """Flattened cube spectrum: ascending eigenvalues with their indices.

    Ties are ordered lexicographically by multi-index; multiplicities
    gives each entry the size of its eigenvalue group.  The truncated
    lattice enumerates the true spectrum faithfully only up to
    reliable_below = prefactor * N^2; entries above that may miss lattice
    points with some axis index beyond N.
    """

    op: CubeOperator
    eigenvalues: np.ndarray
    multi_indices: np.ndarray
    multiplicities: np.ndarray
    reliable_below: float

    def __len__(self) -> int:
        return self.eigenvalues.size

    def to_spectrum(self) -> DiscreteSpectrum:
        return DiscreteSpectrum(self.eigenvalues)


def cube_spectrum(op: CubeOperator) -> CubeSpectrumIndex:
    """Enumerate, sort, and group the truncated lattice spectrum."""
    axis = np.arange(1, op.modes_per_axis + 1, dtype=np.int64)
    grids = np.meshgrid(*[axis] * op.dim, indexing="ij")
    combos = np.stack([g.ravel() for g in grids], axis=1)
    sum_squares = np.sum(combos.astype(np.int64) ** 2, axis=1)
    # meshgrid with "ij" indexing emits multi-indices in lexicographic
    # order, so a stable sort on the integer key realizes the tie-break.
    order = np.argsort(sum_squares, kind="stable")
    sum_squares = sum_squares[order]
    combos = combos[order]
    eigenvalues = op.prefactor * sum_squares.astype(float)
    _, inverse, counts = np.unique(sum_squares, return_inverse=True, return_counts=True)
    multiplicities = counts[inverse]
    eigenvalues.setflags(write=False)
    combos.setflags(write=False)
    multiplicities.setflags(write=False)
    return CubeSpectrumIndex(
        op=op,
        eigenvalues=eigenvalues,
        multi_indices=combos,
        multiplicities=multiplicities,
        reliable_below=op.prefactor * float(op.modes_per_axis**2),
    )


def eigenfunction_eval(op: CubeOperator, multi_index, x) -> float:
    """(2/a)^(q/2) * prod sin(n_k * pi * x_k / a) at a point of the closed box."""
    n = np.asarray(multi_index, dtype=np.int64)
    pt = np.asarray(x, dtype=float)
    if n.shape != (op.dim,) or np.any(n < 1):
        raise ValidationError(f"multi-index must be {op.dim} entries >= 1, got {multi_index}")
    if pt.shape != (op.dim,):
        raise ValidationError(f"point must have {op.dim} coordinates, got {x}")
    if np.any(pt < 0) or np.any(pt > op.side):
        raise ValidationError(f"point {x} lies outside the closed cube [0, {op.side}]^{op.dim}")
    scale = (2.0 / op.side) ** (op.dim / 2.0)
    return float(scale * np.prod(np.sin(n * math.pi * pt / op.side)))


def _check_cube_vector(idx: CubeSpectrumIndex, f: SpectralVector) -> None:
    if not np.array_equal(f.spectrum.eigenvalues, idx.eigenvalues):
        raise ValidationError("spectrum mismatch: vector is not defined over this cube spectrum")


def heat_solution_eval(idx: CubeSpectrumIndex, f: SpectralVector, t: float, x) -> float:
    """Pointwise heat solution sum_k exp(-lam_k t) f_k e_k(x)."""
    if t < 0:
        raise ValidationError(f"time must be >= 0, got {t}")
    _check_cube_vector(idx, f)
    op = idx.op
    pt = np.asarray(x, dtype=float)
    if pt.shape != (op.dim,):
        raise ValidationError(f"point must have {op.dim} coordinates, got {x}")
    if np.any(pt < 0) or np.any(pt > op.side):
        raise ValidationError(f"point {x} lies outside the closed cube [0, {op.side}]^{op.dim}")
    scale = (2.0 / op.side) ** (op.dim / 2.0)
    basis = scale * np.prod(
        np.sin(idx.multi_indices * math.pi * pt[None, :] / op.side), axis=1
    )
    weights = np.exp(-idx.eigenvalues * t) * f.coeffs
    return float(np.dot(weights, basis))


def heat_profile_1d(idx: CubeSpectrumIndex, f: SpectralVector, t: float, xs) -> np.ndarray:
    """Heat solution on a 1-D grid of points, vectorized over the grid."""
    op = idx.op
    if op.dim != 1:
        raise ValidationError(f"grid evaluation needs a 1-D box, got dim {op.dim}")
    if t < 0:
        raise ValidationError(f"time must be >= 0, got {t}")
    _check_cube_vector(idx, f)
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < 0) or np.any(xs > op.side):
        raise ValidationError("grid points lie outside the closed interval")
    modes = idx.multi_indices[:, 0].astype(float)
    weights = math.sqrt(2.0 / op.side) * np.exp(-idx.eigenvalues * t) * f.coeffs
    return np.sin(np.outer(xs, modes) * math.pi / op.side) @ weights


class WeylFit(NamedTuple):
    exponent: float
    c1: float
    c2: float


def weyl_fit(
    idx: CubeSpectrumIndex, q: int, window: tuple[int, int], min_points: int = 20
) -> WeylFit:
    """Two-sided eigenvalue-counting fit lam_n ~ n^(2/q) on an index window.

    window is 1-based inclusive counting indices (n_lo, n_hi).  The log-log
    regression slope estimates the counting exponent 2/q; c1 and c2 are the
    extreme ratios lam_n / n^(2/q) over the window.  The window must stay
    at or below reliable_below, where the truncated lattice still counts
    every eigenvalue.
    """
    lo, hi = int(window[0]), int(window[1])
    if lo < 1 or hi > len(idx) or lo >= hi:
        raise ValidationError(f"window {window} does not fit in 1..{len(idx)}")
    if hi - lo + 1 < min_points:
        raise ValidationError(
            f"window too small: {hi - lo + 1} points, need at least {min_points}"
        )
    lam = idx.eigenvalues[lo - 1 : hi]
    if lam[-1] > idx.reliable_below:
        raise ValidationError(
            f"window top eigenvalue {lam[-1]} is past the reliability threshold "
            f"{idx.reliable_below}; increase modes_per_axis"
        )
    n = np.arange(lo, hi + 1, dtype=float)
    slope = float(np.polyfit(np.log(n), np.log(lam), 1)[0])
    ratios = lam / n ** (2.0 / q)
    return WeylFit(exponent=slope, c1=float(np.min(ratios)), c2=float(np.max(ratios)))


def fd_oracle_1d(
    side: float,
    initial_values: np.ndarray | Callable[[np.ndarray], np.ndarray],
    t_final: float,
    grid_points: int,
    dt: float,
) -> np.ndarray:
    """Crank-Nicolson solution of u_t = u_xx on [0, side] with zero ends.

    Entirely independent of the spectral machinery: uniform grid, averaged
    second differences, one tridiagonal solve per step.  initial_values is
    either an array on the grid (endpoints included) or a callable applied
    to the grid.  Returns the grid values at t_final.
    """
    if not (side > 0):
        raise ValidationError(f"side length must be positive, got {side}")
    if grid_points < 11:
        raise ValidationError(f"need at least 11 grid points, got {grid_points}")
    if not (dt > 0):
        raise ValidationError(f"time step must be positive, got {dt}")
    if t_final < 0:
        raise ValidationError(f"final time must be >= 0, got {t_final}")
    xs = np.linspace(0.0, side, grid_points)
    if callable(initial_values):
        u = np.asarray(initial_values(xs), dtype=float).copy()
    else:
        u = np.array(initial_values, dtype=float)
    if u.shape != xs.shape:
        raise ValidationError(
            f"initial values must match the grid: expected {xs.shape}, got {u.shape}"
        )
    u[0] = 0.0
    u[-1] = 0.0

    n_steps = int(round(t_final / dt))
    remainder = t_final - n_steps * dt
    if abs(remainder) <= 1e-12 * max(t_final, dt):
        remainder = 0.0
    elif remainder < 0:
        n_steps -= 1
        remainder = t_final - n_steps * dt

    def step(u_now: np.ndarray, step_dt: float) -> np.ndarray:
        dx = side / (grid_points - 1)
        mu = step_dt / dx**2
        interior = grid_points - 2
        banded = np.zeros((3, interior))
        banded[0, 1:] = -mu / 2.0
        banded[1, :] = 1.0 + mu
        banded[2, :-1] = -mu / 2.0
        rhs = (1.0 - mu) * u_now[1:-1] + (mu / 2.0) * (u_now[2:] + u_now[:-2])
        try:
            inner = solve_banded((1, 1), banded, rhs)
        except np.linalg.LinAlgError as exc:  # defensive: system is diagonally dominant
            raise NumericalError(f"tridiagonal solve failed: {exc}") from exc
        out = np.zeros_like(u_now)
        out[1:-1] = inner
        return out

    for _ in range(n_steps):
        u = step(u, dt)
    if remainder > 0.0:
        u = step(u, remainder)
    return u


def cube_vector_to_csv(idx: CubeSpectrumIndex, f: SpectralVector) -> str:
    """Vector serialization with the extra multi_index column (n1;n2;...)."""
    _check_cube_vector(idx, f)
    rows = (
        (float(lam), float(c), ";".join(str(int(n)) for n in mi))
        for lam, c, mi in zip(idx.eigenvalues, f.coeffs, idx.multi_indices)
    )
    return csv_text("lambda,coeff,multi_index", rows)
