"""JSON file formats.

Matrix file::

    {"rows": 2, "cols": 2, "data": [[re, im], [re, im], [re, im], [re, im]]}

``data`` is row-major. Symbol file::

    {"coeffs": [{"n": -1, "re": 1.0, "im": 0.0}, {"n": 1, "re": 1.0, "im": 0.0}]}
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .linalg import InputError


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise InputError("matrix must be 2-D")
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in M.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise InputError("matrix file must hold a JSON object")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise InputError(f"matrix file is missing field {exc}") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise InputError("rows and cols must be non-negative integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise InputError(f"data must list rows*cols = {rows * cols} entries")
    out = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(data):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InputError(f"entry {i} is not a [re, im] pair")
        re, im = pair
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
            raise InputError(f"entry {i} is not numeric")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InputError(f"entry {i} is not finite")
        out[i] = complex(re, im)
    return out.reshape(rows, cols)


def _read_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def read_matrix(path) -> np.ndarray:
    return matrix_from_json(_read_json(path))


def write_matrix(path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)) + "\n", encoding="utf-8")


def symbol_to_json(sym) -> dict:
    return {
        "coeffs": [
            {"n": int(n), "re": float(c.real), "im": float(c.imag)}
            for n, c in sorted(sym.coeffs.items())
        ]
    }


def symbol_from_json(obj):
    from .hardy import SymbolSpec

    if not isinstance(obj, dict) or not isinstance(obj.get("coeffs"), list):
        raise InputError("symbol file must hold an object with a 'coeffs' list")
    coeffs = {}
    for i, entry in enumerate(obj["coeffs"]):
        if not isinstance(entry, dict):
            raise InputError(f"coefficient {i} is not an object")
        try:
            n, re, im = entry["n"], entry["re"], entry.get("im", 0.0)
        except KeyError as exc:
            raise InputError(f"coefficient {i} is missing field {exc}") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise InputError(f"coefficient {i}: index must be an integer")
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
            raise InputError(f"coefficient {i} is not numeric")
        if n in coeffs:
            raise InputError(f"duplicate coefficient index {n}")
        coeffs[n] = complex(re, im)
    return SymbolSpec(coeffs)


def read_symbol(path):
    return symbol_from_json(_read_json(path))


def write_symbol(path, sym) -> None:
    Path(path).write_text(json.dumps(symbol_to_json(sym)) + "\n", encoding="utf-8")
