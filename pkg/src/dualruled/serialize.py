"""Deterministic JSON: sorted keys, fixed-width floats, no platform drift.

Reports must be byte-identical across runs and machines, so floats are
printed in 12-significant-digit scientific notation instead of repr's
shortest roundtrip (which can differ between libm builds for the same
value history). Non-finite numbers are rejected outright.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ValidationError


def _fmt_float(x: float) -> str:
    if not np.isfinite(x):
        raise ValidationError(f"non-finite value {x!r} in report payload")
    return f"{x:.11e}"


def _emit(obj, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise ValidationError(f"JSON object keys must be strings, got {key!r}")
            parts.append(f"{inner}{json.dumps(key)}: {_emit(obj[key], indent + 1)}")
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = list(np.asarray(obj).tolist()) if isinstance(obj, np.ndarray) else list(obj)
        if not items:
            return "[]"
        parts = [f"{inner}{_emit(v, indent + 1)}" for v in items]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise ValidationError(f"cannot serialize {type(obj).__name__} deterministically")


def dumps_canonical(obj) -> str:
    """Render a report object to canonical JSON text (with trailing newline)."""
    return _emit(obj, 0) + "\n"
