"""JSON readers and writers for tensors, moduli and spectra.

Formats::

    {"format": "t3-vec18", "data": [18 numbers]}
    {"format": "t3-full",  "data": [27 numbers, row-major i, j, k]}
    {"format": "a18",      "data": [[18 numbers] x 18]}
    {"ms3": x, "ms1": x, "mr2": x, "mr1": x, "mc1": x}
    [{"value": x, "multiplicity": n}, ...]

Floats are written with Python's shortest round-trip repr, so every value
re-reads bit-identically.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import FormatError
from .harmonic_parts import HarmonicPartsT3
from .tensor_algebra import DEFAULT_SYMMETRY_TOL, Grad6, Tensor3
from .walpole import IsotropicModuli


def load(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj, indent: int | None = None) -> str:
    return json.dumps(obj, indent=indent, allow_nan=False)


def _numbers(data, shape, what) -> np.ndarray:
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{what}: data must be numeric") from exc
    if arr.shape != shape:
        raise FormatError(f"{what}: expected data of shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"{what}: data contains non-finite values")
    return arr


def _format_of(obj) -> str:
    if not isinstance(obj, dict) or "format" not in obj or "data" not in obj:
        raise FormatError('expected an object with "format" and "data" keys')
    return obj["format"]


def tensor3_from_json(obj, tol: float = DEFAULT_SYMMETRY_TOL) -> Tensor3:
    fmt = _format_of(obj)
    if fmt == "t3-vec18":
        return Tensor3(_numbers(obj["data"], (18,), fmt))
    if fmt == "t3-full":
        return Tensor3.from_full(_numbers(obj["data"], (27,), fmt).reshape(3, 3, 3), tol)
    raise FormatError(f"unknown third-order tensor format {fmt!r}")


def tensor3_to_json(t: Tensor3, fmt: str = "t3-vec18") -> dict:
    if fmt == "t3-vec18":
        return {"format": fmt, "data": t.vec18.tolist()}
    if fmt == "t3-full":
        return {"format": fmt, "data": t.full().ravel().tolist()}
    raise ValueError(f"unknown format {fmt!r}")


def grad6_from_json(obj, tol: float = DEFAULT_SYMMETRY_TOL) -> Grad6:
    fmt = _format_of(obj)
    if fmt != "a18":
        raise FormatError(f"unknown sixth-order tensor format {fmt!r}")
    return Grad6(_numbers(obj["data"], (18, 18), fmt), tol=tol)


def grad6_to_json(a: Grad6) -> dict:
    return {"format": "a18", "data": a.mat18.tolist()}


def moduli_from_json(obj) -> IsotropicModuli:
    if not isinstance(obj, dict):
        raise FormatError("moduli must be a JSON object")
    missing = [f for f in IsotropicModuli.FIELDS if f not in obj]
    if missing:
        raise FormatError(f"moduli object is missing {', '.join(missing)}")
    try:
        m = IsotropicModuli.from_json(obj)
    except (TypeError, ValueError) as exc:
        raise FormatError("moduli must be numbers") from exc
    if not all(math.isfinite(x) for x in m.as_array()):
        raise FormatError("moduli must be finite")
    return m


def spectrum_to_json(spectrum) -> list:
    return [{"value": float(v), "multiplicity": int(n)} for v, n in spectrum]


def spectrum_from_json(obj) -> list[tuple[float, int]]:
    try:
        return [(float(e["value"]), int(e["multiplicity"])) for e in obj]
    except (TypeError, KeyError, ValueError) as exc:
        raise FormatError("spectrum must be a list of {value, multiplicity} objects") from exc


def parts_from_json(obj) -> HarmonicPartsT3:
    try:
        return HarmonicPartsT3.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise FormatError("harmonic parts need h3, h2, v_str and v_rot") from exc
