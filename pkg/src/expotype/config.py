"""Experiment configuration: one TOML file fully determines one run.

No environment variables, no hidden defaults that change results: the
config plus the seed reproduce every output byte for byte.  Validation
errors name the offending key.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ValidationError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = ["ExperimentConfig", "load_config", "parse_config", "resolve_grid"]

KINDS = ("decay", "verify", "classify", "cube", "oracle")

SPECTRUM_SOURCES = ("explicit", "arithmetic", "cube")
COEFFICIENT_SOURCES = ("explicit", "power", "stretched_exp", "tau_reciprocal", "random")


def _require(table: dict, key: str, kinds, where: str):
    if key not in table:
        raise ValidationError(f"missing required key '{where}.{key}'")
    value = table[key]
    if not isinstance(value, kinds):
        raise ValidationError(f"key '{where}.{key}' has wrong type {type(value).__name__}")
    return value


def _reject_unknown(table: dict, known: set[str], where: str) -> None:
    unknown = set(table) - known
    if unknown:
        raise ValidationError(f"unknown key '{where}.{sorted(unknown)[0]}'")


def _optional(table: dict, key: str, kinds, where: str, default=None):
    if key not in table:
        return default
    return _require(table, key, kinds, where)


def _float_list(value, where: str) -> list[float]:
    if not isinstance(value, list) or not value:
        raise ValidationError(f"key '{where}' must be a nonempty list of numbers")
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ValidationError(f"key '{where}' must contain only numbers")
        out.append(float(item))
    return out


def resolve_grid(value, where: str) -> np.ndarray:
    """A grid is an explicit list or {scale, start, stop, count}."""
    if isinstance(value, list):
        grid = np.asarray(_float_list(value, where))
    elif isinstance(value, dict):
        scale = _optional(value, "scale", str, where, "linear")
        start = float(_require(value, "start", (int, float), where))
        stop = float(_require(value, "stop", (int, float), where))
        count = _require(value, "count", int, where)
        if count < 2:
            raise ValidationError(f"key '{where}.count' must be >= 2")
        if scale == "linear":
            grid = np.linspace(start, stop, count)
        elif scale == "log":
            if start <= 0 or stop <= 0:
                raise ValidationError(f"log grid '{where}' needs positive endpoints")
            grid = np.geomspace(start, stop, count)
        else:
            raise ValidationError(f"key '{where}.scale' must be 'linear' or 'log'")
    else:
        raise ValidationError(f"key '{where}' must be a list or a grid table")
    if np.any(np.diff(grid) <= 0):
        raise ValidationError(f"grid '{where}' must be strictly increasing")
    return grid


@dataclass
class ExperimentConfig:
    kind: str
    seed: int = 0
    out: str | None = None
    spectrum: dict | None = None
    coefficients: dict | None = None
    grids: dict[str, np.ndarray] = field(default_factory=dict)
    suite: dict | None = None
    curve: dict | None = None
    derivative_norms: dict | None = None
    taylor: dict | None = None
    weyl: dict | None = None
    oracle: dict | None = None


def _parse_spectrum(table: dict) -> dict:
    where = "spectrum"
    _reject_unknown(
        table,
        {"source", "eigenvalues", "count", "step", "dim", "side", "modes_per_axis"},
        where,
    )
    source = _require(table, "source", str, where)
    if source not in SPECTRUM_SOURCES:
        raise ValidationError(f"key 'spectrum.source' must be one of {SPECTRUM_SOURCES}")
    out: dict[str, Any] = {"source": source}
    if source == "explicit":
        out["eigenvalues"] = _float_list(_require(table, "eigenvalues", list, where), "spectrum.eigenvalues")
    elif source == "arithmetic":
        count = _require(table, "count", int, where)
        step = float(_require(table, "step", (int, float), where))
        if count < 1 or step <= 0:
            raise ValidationError("'spectrum.count' must be >= 1 and 'spectrum.step' > 0")
        out["count"] = count
        out["step"] = step
    else:  # cube
        out["dim"] = _require(table, "dim", int, where)
        out["side"] = float(_require(table, "side", (int, float), where))
        out["modes_per_axis"] = _require(table, "modes_per_axis", int, where)
    return out


def _parse_coefficients(table: dict) -> dict:
    where = "coefficients"
    _reject_unknown(
        table,
        {"source", "values", "exponent", "beta", "alpha", "growth", "count", "low", "high"},
        where,
    )
    source = _require(table, "source", str, where)
    if source not in COEFFICIENT_SOURCES:
        raise ValidationError(
            f"key 'coefficients.source' must be one of {COEFFICIENT_SOURCES}"
        )
    out: dict[str, Any] = {"source": source}
    if source == "explicit":
        out["values"] = _float_list(_require(table, "values", list, where), "coefficients.values")
    elif source == "power":
        out["exponent"] = float(_require(table, "exponent", (int, float), where))
    elif source == "stretched_exp":
        beta = float(_require(table, "beta", (int, float), where))
        if beta <= 0:
            raise ValidationError("'coefficients.beta' must be positive")
        out["beta"] = beta
        out["alpha"] = float(_optional(table, "alpha", (int, float), where, 1.0))
    elif source == "tau_reciprocal":
        growth = _require(table, "growth", str, where)
        if growth not in ("factorial", "gevrey"):
            raise ValidationError("'coefficients.growth' must be 'factorial' or 'gevrey'")
        out["growth"] = growth
        if growth == "gevrey":
            out["beta"] = float(_require(table, "beta", (int, float), where))
        out["alpha"] = float(_optional(table, "alpha", (int, float), where, 1.0))
    else:  # random
        count = _require(table, "count", int, where)
        if count < 1:
            raise ValidationError("'coefficients.count' must be >= 1")
        out["count"] = count
        out["low"] = float(_optional(table, "low", (int, float), where, -1.0))
        out["high"] = float(_optional(table, "high", (int, float), where, 1.0))
    return out


def _parse_suite(table: dict) -> dict:
    where = "suite"
    _reject_unknown(
        table,
        {
            "vectors",
            "max_modes",
            "lambda_max",
            "coeff_low",
            "coeff_high",
            "jackson_k",
            "derivative_n",
            "derivative_k",
            "bernstein_h",
            "bernstein_max_k",
            "bernstein_max_n",
        },
        where,
    )
    out = {
        "vectors": _require(table, "vectors", int, where),
        "max_modes": _require(table, "max_modes", int, where),
        "lambda_max": float(_require(table, "lambda_max", (int, float), where)),
        "coeff_low": float(_optional(table, "coeff_low", (int, float), where, -1.0)),
        "coeff_high": float(_optional(table, "coeff_high", (int, float), where, 1.0)),
        "jackson_k": [int(k) for k in _optional(table, "jackson_k", list, where, [1, 2, 3])],
        "derivative_n": [int(n) for n in _optional(table, "derivative_n", list, where, [1, 2])],
        "derivative_k": [int(k) for k in _optional(table, "derivative_k", list, where, [0, 1])],
        "bernstein_h": _float_list(_optional(table, "bernstein_h", list, where, [0.1, 1.0, 2.0]), "suite.bernstein_h"),
        "bernstein_max_k": _optional(table, "bernstein_max_k", int, where, 4),
        "bernstein_max_n": _optional(table, "bernstein_max_n", int, where, 4),
    }
    if out["vectors"] < 1 or out["max_modes"] < 1 or out["lambda_max"] <= 0:
        raise ValidationError("'suite' sizes must be positive")
    return out


def parse_config(raw: dict, source: str = "<config>") -> ExperimentConfig:
    _reject_unknown(
        raw,
        {
            "kind",
            "seed",
            "out",
            "spectrum",
            "coefficients",
            "grids",
            "suite",
            "curve",
            "derivative_norms",
            "taylor",
            "weyl",
            "oracle",
        },
        "top level",
    )
    kind = _require(raw, "kind", str, "top level")
    if kind not in KINDS:
        raise ValidationError(f"key 'kind' must be one of {KINDS}, got '{kind}'")
    seed = _optional(raw, "seed", int, "top level", 0)
    if not (0 <= seed < 2**64):
        raise ValidationError("key 'seed' must be an unsigned 64-bit integer")
    out_dir = _optional(raw, "out", str, "top level")

    cfg = ExperimentConfig(kind=kind, seed=seed, out=out_dir)
    if "spectrum" in raw:
        cfg.spectrum = _parse_spectrum(_require(raw, "spectrum", dict, "top level"))
    if "coefficients" in raw:
        cfg.coefficients = _parse_coefficients(_require(raw, "coefficients", dict, "top level"))
    if "grids" in raw:
        grids_table = _require(raw, "grids", dict, "top level")
        for name in grids_table:
            if name not in ("r", "t", "h"):
                raise ValidationError(f"unknown grid 'grids.{name}'")
            cfg.grids[name] = resolve_grid(grids_table[name], f"grids.{name}")
    if "suite" in raw:
        cfg.suite = _parse_suite(_require(raw, "suite", dict, "top level"))
    if "curve" in raw:
        cfg.curve = _require(raw, "curve", dict, "top level")
        _reject_unknown(
            cfg.curve, {"model", "exponent", "alpha", "beta", "r", "values"}, "curve"
        )
    if "derivative_norms" in raw:
        cfg.derivative_norms = _require(raw, "derivative_norms", dict, "top level")
        _reject_unknown(
            cfg.derivative_norms,
            {"model", "beta", "rate", "n_max", "log_values"},
            "derivative_norms",
        )
    if "taylor" in raw:
        cfg.taylor = _require(raw, "taylor", dict, "top level")
        _reject_unknown(cfg.taylor, {"n_max"}, "taylor")
    if "weyl" in raw:
        cfg.weyl = _require(raw, "weyl", dict, "top level")
        _reject_unknown(cfg.weyl, {"window", "min_points"}, "weyl")
    if "oracle" in raw:
        cfg.oracle = _require(raw, "oracle", dict, "top level")
        _reject_unknown(cfg.oracle, {"t_final", "grid_points", "dt"}, "oracle")

    _check_kind_requirements(cfg, source)
    return cfg


def _check_kind_requirements(cfg: ExperimentConfig, source: str) -> None:
    kind = cfg.kind
    if kind == "verify":
        if cfg.suite is None:
            raise ValidationError(f"{source}: kind 'verify' needs a [suite] section")
        if "r" not in cfg.grids:
            raise ValidationError(f"{source}: kind 'verify' needs grids.r")
    elif kind == "decay":
        if cfg.spectrum is None or cfg.coefficients is None:
            raise ValidationError(f"{source}: kind 'decay' needs [spectrum] and [coefficients]")
        if "r" not in cfg.grids:
            raise ValidationError(f"{source}: kind 'decay' needs grids.r")
    elif kind == "classify":
        routes = [
            cfg.curve is not None,
            cfg.derivative_norms is not None,
            cfg.spectrum is not None and cfg.coefficients is not None,
        ]
        if sum(routes) != 1:
            raise ValidationError(
                f"{source}: kind 'classify' needs exactly one input: [curve], "
                "[derivative_norms], or [spectrum] + [coefficients]"
            )
        if routes[2] and "r" not in cfg.grids:
            raise ValidationError(f"{source}: classify via a vector needs grids.r")
    elif kind == "cube":
        if cfg.spectrum is None or cfg.spectrum["source"] != "cube":
            raise ValidationError(f"{source}: kind 'cube' needs [spectrum] with source = 'cube'")
    elif kind == "oracle":
        if cfg.spectrum is None or cfg.spectrum["source"] != "cube":
            raise ValidationError(f"{source}: kind 'oracle' needs [spectrum] with source = 'cube'")
        if cfg.spectrum["dim"] != 1:
            raise ValidationError(f"{source}: the finite-difference oracle is one-dimensional")
        if cfg.coefficients is None:
            raise ValidationError(f"{source}: kind 'oracle' needs [coefficients]")
        if cfg.oracle is None:
            raise ValidationError(f"{source}: kind 'oracle' needs an [oracle] section")


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        with open(path, "rb") as handle:
            raw = tomllib.load(handle)
    except FileNotFoundError as exc:
        raise ValidationError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    return parse_config(raw, source=str(path))
