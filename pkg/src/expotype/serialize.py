"""Deterministic text output.

Every float is printed with 17 significant digits (``%.17g``), which
round-trips IEEE double precision exactly, so identical inputs produce
byte-identical CSV and JSON artifacts.
"""

from __future__ import annotations

import json
import math
from typing import Any, Iterable

from .errors import ValidationError


def fmt_float(x: float) -> str:
    """Render a finite float with 17 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def csv_text(header: str, rows: Iterable[Iterable[Any]]) -> str:
    """Build a CSV document; floats via fmt_float, everything else via str."""
    lines = [header]
    for row in rows:
        fields = []
        for cell in row:
            if isinstance(cell, bool):
                fields.append("true" if cell else "false")
            elif isinstance(cell, float):
                fields.append(fmt_float(cell))
            else:
                fields.append(str(cell))
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def _emit(value: Any, indent: int, out: list[str]) -> None:
    pad = " " * indent
    inner = " " * (indent + 2)
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(fmt_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f"{inner}{json.dumps(str(key))}: ")
            _emit(item, indent + 2, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not len(value):
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(inner)
            _emit(item, indent + 2, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise ValidationError(f"cannot serialize value of type {type(value).__name__}")


def to_json(value: Any) -> str:
    """Serialize nested dicts/lists/scalars to JSON with 17-digit floats.

    The standard library encoder prints floats with ``repr``; this emitter
    is used instead so float formatting matches the CSV outputs and the
    result is reproducible byte for byte.
    """
    out: list[str] = []
    _emit(value, 0, out)
    out.append("\n")
    return "".join(out)
