"""JSON and TSV formats shared by the library and the command line.

Matrix file: ``{"n": 3, "rows": [[...], [...], [...]]}``, full rows,
symmetric within ``1e-12``.

Spec file: ``{"sigma": [...], "rho": [...]}`` with ``len(rho) == len(sigma) - 1``.

Sample file: one draw per line, values separated by tabs.

Floats are written with ``repr``, the shortest decimal string that reads
back to the same double.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .markov_model import ChainSpec

__all__ = [
    "InputError",
    "SYMMETRY_ATOL",
    "load_json",
    "parse_matrix",
    "parse_spec",
    "read_matrix",
    "read_spec",
    "matrix_to_dict",
    "dumps",
    "format_samples",
    "parse_samples",
    "read_samples",
    "write_samples",
]

SYMMETRY_ATOL = 1e-12


class InputError(ValueError):
    """Malformed input file; the message carries file, line or field context."""


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None


def _float(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise InputError(f"{where}: non-finite value {value!r}")
    return x


def parse_matrix(obj: Any, source: str = "<matrix>") -> NDArray[np.float64]:
    """Validate a matrix object and return it as a symmetric array."""
    if not isinstance(obj, dict) or "rows" not in obj:
        raise InputError(f"{source}: expected an object with 'n' and 'rows'")
    rows = obj["rows"]
    if not isinstance(rows, list) or not rows:
        raise InputError(f"{source}: field 'rows' must be a non-empty list")
    n = obj.get("n", len(rows))
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"{source}: field 'n' must be a positive integer, got {n!r}")
    if len(rows) != n:
        raise InputError(f"{source}: field 'rows' has {len(rows)} rows, expected n={n}")
    a = np.empty((n, n))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{source}: rows[{i}] must be a list of {n} numbers")
        for j, v in enumerate(row):
            a[i, j] = _float(v, f"{source}: rows[{i}][{j}]")
    asym = np.abs(a - a.T)
    if asym.max() > SYMMETRY_ATOL:
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise InputError(
            f"{source}: matrix not symmetric at rows[{i}][{j}] vs rows[{j}][{i}] "
            f"(difference {asym[i, j]:.3e})"
        )
    return 0.5 * (a + a.T)


def parse_spec(obj: Any, source: str = "<spec>") -> ChainSpec:
    if not isinstance(obj, dict) or "sigma" not in obj:
        raise InputError(f"{source}: expected an object with 'sigma' and 'rho'")
    sigma, rho = obj["sigma"], obj.get("rho", [])
    for name, vals in (("sigma", sigma), ("rho", rho)):
        if not isinstance(vals, list):
            raise InputError(f"{source}: field '{name}' must be a list")
    sigma = [_float(v, f"{source}: sigma[{i}]") for i, v in enumerate(sigma)]
    rho = [_float(v, f"{source}: rho[{i}]") for i, v in enumerate(rho)]
    try:
        return ChainSpec(tuple(sigma), tuple(rho))
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None


def read_matrix(path: str | Path) -> NDArray[np.float64]:
    return parse_matrix(load_json(path), str(path))


def read_spec(path: str | Path) -> ChainSpec:
    return parse_spec(load_json(path), str(path))


def matrix_to_dict(m: ArrayLike) -> dict:
    a = np.asarray(m, dtype=np.float64)
    return {"n": int(a.shape[0]), "rows": a.tolist()}


def _clean(obj: Any) -> Any:
    # JSON has no inf/nan
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def dumps(obj: Any, indent: int | None = 2) -> str:
    return json.dumps(_clean(obj), indent=indent, allow_nan=False)


def format_samples(values: ArrayLike) -> str:
    X = np.atleast_2d(np.asarray(values, dtype=np.float64))
    return "".join("\t".join(repr(float(v)) for v in row) + "\n" for row in X)


def write_samples(path: str | Path, values: ArrayLike) -> None:
    Path(path).write_text(format_samples(values))


def parse_samples(text: str, source: str = "<samples>") -> NDArray[np.float64]:
    rows: list[list[float]] = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.rstrip("\n").split("\t")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise InputError(f"{source}:{lineno}: expected {width} fields, got {len(fields)}")
        try:
            row = [float(f) for f in fields]
        except ValueError:
            raise InputError(f"{source}:{lineno}: non-numeric field in {line!r}") from None
        if not all(math.isfinite(v) for v in row):
            raise InputError(f"{source}:{lineno}: non-finite value")
        rows.append(row)
    if not rows:
        raise InputError(f"{source}: no samples")
    return np.array(rows)


def read_samples(path: str | Path) -> NDArray[np.float64]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    return parse_samples(text, str(path))
