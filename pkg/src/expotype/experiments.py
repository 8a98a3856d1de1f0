"""Experiment drivers behind the command-line interface.

Each runner is a pure function of (config, seed): outputs land in the
requested directory with fixed names and deterministic bytes.  Randomized
instances draw from independent generator streams seeded as seed + index,
so partial reruns and parallel fan-out cannot reorder results.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import approximation as ap
from . import classification as cl
from . import cube as cb
from . import growth as gr
from . import semigroup as sg
from . import spectral as sp
from .config import ExperimentConfig
from .errors import ValidationError
from .serialize import csv_text, to_json

__all__ = ["run", "random_suite_vector"]


def _build_spectrum(cfg: ExperimentConfig):
    assert cfg.spectrum is not None
    table = cfg.spectrum
    if table["source"] == "explicit":
        return sp.make_spectrum(table["eigenvalues"]), None
    if table["source"] == "arithmetic":
        lam = table["step"] * np.arange(1, table["count"] + 1)
        return sp.DiscreteSpectrum(lam), None
    op = cb.CubeOperator(
        dim=table["dim"], side=table["side"], modes_per_axis=table["modes_per_axis"]
    )
    idx = cb.cube_spectrum(op)
    return idx.to_spectrum(), idx


def _build_coefficients(
    cfg: ExperimentConfig, spectrum: sp.DiscreteSpectrum, rng: np.random.Generator
) -> np.ndarray:
    assert cfg.coefficients is not None
    table = cfg.coefficients
    lam = spectrum.eigenvalues
    source = table["source"]
    if source == "explicit":
        values = np.asarray(table["values"], dtype=float)
        if values.size != len(spectrum):
            raise ValidationError(
                f"coefficients.values has {values.size} entries, spectrum has {len(spectrum)}"
            )
        return values
    if source == "power":
        if np.any(lam <= 0):
            raise ValidationError("power coefficients need strictly positive eigenvalues")
        return lam ** (-table["exponent"])
    if source == "stretched_exp":
        return np.exp(-table["alpha"] * lam ** (1.0 / table["beta"]))
    if source == "tau_reciprocal":
        if table["growth"] == "factorial":
            m = gr.GrowthSequence.factorial()
        else:
            m = gr.GrowthSequence.gevrey(table["beta"])
        return np.array([math.exp(-gr.log_tau(m, table["alpha"] * l)) for l in lam])
    # random: uniform draws on the leading modes, zero elsewhere
    count = table["count"]
    if count > len(spectrum):
        raise ValidationError(
            f"coefficients.count {count} exceeds spectrum size {len(spectrum)}"
        )
    coeffs = np.zeros(len(spectrum))
    coeffs[:count] = rng.uniform(table["low"], table["high"], count)
    return coeffs


def random_suite_vector(
    seed: int, index: int, max_modes: int, lambda_max: float, low: float, high: float
) -> sp.SpectralVector:
    """Instance `index` of the randomized suite: its own PCG64 stream."""
    rng = np.random.default_rng(seed + index)
    k = int(rng.integers(1, max_modes, endpoint=True))
    lam = np.sort(rng.uniform(0.0, lambda_max, k))
    coeffs = rng.uniform(low, high, k)
    return sp.SpectralVector(sp.DiscreteSpectrum(lam), coeffs)


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def _run_decay(cfg: ExperimentConfig, out: Path, seed: int) -> list[Path]:
    spectrum, _ = _build_spectrum(cfg)
    coeffs = _build_coefficients(cfg, spectrum, np.random.default_rng(seed))
    vector = sp.SpectralVector(spectrum, coeffs)
    curve = ap.decay_curve(vector, cfg.grids["r"])
    return [_write(out / "decay.csv", ap.curve_to_csv(curve))]


def _run_verify(cfg: ExperimentConfig, out: Path, seed: int) -> list[Path]:
    assert cfg.suite is not None
    suite = cfg.suite
    r_grid = cfg.grids["r"]
    records = []
    for i in range(suite["vectors"]):
        f = random_suite_vector(
            seed, i, suite["max_modes"], suite["lambda_max"],
            suite["coeff_low"], suite["coeff_high"],
        )
        for k in suite["jackson_k"]:
            for r in r_grid:
                rep = ap.jackson_check(f, k, float(r))
                records.append(_suite_record(i, rep))
        for n in suite["derivative_n"]:
            for k in suite["derivative_k"]:
                for r in r_grid:
                    rep = ap.derivative_jackson_check(f, n, k, float(r))
                    records.append(_suite_record(i, rep))
        for h in suite["bernstein_h"]:
            for k in range(suite["bernstein_max_k"] + 1):
                for n in range(suite["bernstein_max_n"] + 1):
                    rep = ap.bernstein_check(f, h, k, n)
                    records.append(_suite_record(i, rep))
    return [_write(out / "reports.json", to_json(records))]


def _suite_record(index: int, report: ap.InequalityReport) -> dict:
    record = ap.report_record(report)
    record["name"] = f"i={index}:{record['name']}"
    return record


def _table_number(table: dict, key: str, where: str) -> float:
    if key not in table or isinstance(table[key], bool) or not isinstance(
        table[key], (int, float)
    ):
        raise ValidationError(f"missing or non-numeric key '{where}.{key}'")
    return float(table[key])


def _synthetic_curve(table: dict, cfg: ExperimentConfig) -> ap.DecayCurve:
    if "values" in table:
        if "r" not in table:
            raise ValidationError("explicit curve.values needs curve.r alongside")
        return ap.DecayCurve(
            np.asarray(table["r"], dtype=float), np.asarray(table["values"], dtype=float)
        )
    if "r" not in cfg.grids:
        raise ValidationError("synthetic curve models need grids.r")
    r = cfg.grids["r"]
    model = table.get("model")
    if model == "power":
        values = r ** (-_table_number(table, "exponent", "curve"))
    elif model == "stretched_exp":
        alpha = float(table.get("alpha", 1.0))
        beta = _table_number(table, "beta", "curve")
        values = np.exp(-alpha * r ** (1.0 / beta))
    else:
        raise ValidationError("curve.model must be 'power' or 'stretched_exp'")
    return ap.DecayCurve(r, values)


def _tabulated_log_norms(table: dict) -> np.ndarray:
    if "log_values" in table:
        return np.asarray(table["log_values"], dtype=float)
    model = table.get("model")
    n_max = int(table.get("n_max", 200))
    ns = np.arange(n_max + 1)
    if model == "gevrey":
        beta = _table_number(table, "beta", "derivative_norms")
        return beta * np.where(ns > 0, ns * np.log(np.maximum(ns, 1)), 0.0)
    if model == "geometric":
        rate = _table_number(table, "rate", "derivative_norms")
        if rate <= 0:
            raise ValidationError("derivative_norms.rate must be positive")
        return ns * math.log(rate)
    raise ValidationError("derivative_norms needs log_values or model 'gevrey'/'geometric'")


def _run_classify(cfg: ExperimentConfig, out: Path, seed: int) -> list[Path]:
    result: dict = {"classification": None, "taylor_order": None, "order_from_beta": None}
    if cfg.derivative_norms is not None:
        result["taylor_order"] = cl.order_from_log_derivative_norms(
            _tabulated_log_norms(cfg.derivative_norms)
        )
    else:
        if cfg.curve is not None:
            curve = _synthetic_curve(cfg.curve, cfg)
        else:
            spectrum, _ = _build_spectrum(cfg)
            coeffs = _build_coefficients(cfg, spectrum, np.random.default_rng(seed))
            vector = sp.SpectralVector(spectrum, coeffs)
            curve = ap.decay_curve(vector, cfg.grids["r"])
            if cfg.taylor is not None:
                result["taylor_order"] = cl.order_from_taylor(
                    sg.SolutionHandle(vector), int(cfg.taylor.get("n_max", 200))
                )
        verdict = cl.classify_decay(curve)
        result["classification"] = cl.classification_record(verdict)
        if verdict.beta is not None and 0.0 < verdict.beta < 1.0:
            result["order_from_beta"] = cl.order_from_beta(verdict.beta)
    return [_write(out / "classification.json", to_json(result))]


def _run_cube(cfg: ExperimentConfig, out: Path, seed: int) -> list[Path]:
    spectrum, idx = _build_spectrum(cfg)
    assert idx is not None
    if cfg.coefficients is not None:
        coeffs = _build_coefficients(cfg, spectrum, np.random.default_rng(seed))
    else:
        coeffs = np.zeros(len(spectrum))
    vector = sp.SpectralVector(spectrum, coeffs)
    written = [_write(out / "spectrum.csv", cb.cube_vector_to_csv(idx, vector))]
    if cfg.weyl is not None:
        window = cfg.weyl.get("window")
        if (
            not isinstance(window, list)
            or len(window) != 2
            or not all(isinstance(w, int) for w in window)
        ):
            raise ValidationError("weyl.window must be [lo, hi] with integer bounds")
        fit = cb.weyl_fit(
            idx,
            idx.op.dim,
            (window[0], window[1]),
            min_points=int(cfg.weyl.get("min_points", 20)),
        )
        record = {
            "exponent": fit.exponent,
            "c1": fit.c1,
            "c2": fit.c2,
            "window": [int(window[0]), int(window[1])],
        }
        written.append(_write(out / "weyl.json", to_json(record)))
    return written


def _run_oracle(cfg: ExperimentConfig, out: Path, seed: int) -> list[Path]:
    assert cfg.oracle is not None
    spectrum, idx = _build_spectrum(cfg)
    assert idx is not None and idx.op.dim == 1
    coeffs = _build_coefficients(cfg, spectrum, np.random.default_rng(seed))
    vector = sp.SpectralVector(spectrum, coeffs)
    t_final = float(cfg.oracle.get("t_final", 0.1))
    grid_points = int(cfg.oracle.get("grid_points", 401))
    dt = float(cfg.oracle.get("dt", 1e-4))
    xs = np.linspace(0.0, idx.op.side, grid_points)
    u0 = cb.heat_profile_1d(idx, vector, 0.0, xs)
    u_fd = cb.fd_oracle_1d(idx.op.side, u0, t_final, grid_points, dt)
    u_spec = cb.heat_profile_1d(idx, vector, t_final, xs)
    denom = float(np.linalg.norm(u_spec))
    error = float(np.linalg.norm(u_fd - u_spec)) / denom if denom > 0 else 0.0
    rows = (
        (float(x), float(us), float(uf), error)
        for x, us, uf in zip(xs, u_spec, u_fd)
    )
    text = csv_text("x,u_spectral,u_fd,l2_rel_error", rows)
    return [_write(out / "comparison.csv", text)]


_RUNNERS = {
    "decay": _run_decay,
    "verify": _run_verify,
    "classify": _run_classify,
    "cube": _run_cube,
    "oracle": _run_oracle,
}


def run(cfg: ExperimentConfig, out_dir: str | Path, seed: int | None = None) -> list[Path]:
    """Execute one experiment; returns the list of files written."""
    effective_seed = cfg.seed if seed is None else seed
    if not (0 <= effective_seed < 2**64):
        raise ValidationError("seed must be an unsigned 64-bit integer")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return _RUNNERS[cfg.kind](cfg, out, effective_seed)
