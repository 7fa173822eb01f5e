"""File formats: raw float32/uint8 matrices with JSON sidecars, CSV, manifests.

Binary layout is fixed little-endian row-major so datasets are bit-exactly
reproducible and readable from any language.  Every binary file ``name.f32``
or ``name.u8`` has a sidecar ``name.json`` carrying at least ``format_version``,
``dtype`` and ``shape``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DataFormatError

FORMAT_VERSION = 1

_DTYPES = {".f32": "<f4", ".u8": "u1"}


def write_json(path, doc: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _sidecar_path(path: Path) -> Path:
    return path.with_suffix(".json")


def write_array(path, arr: np.ndarray, **sidecar_extra) -> None:
    """Write a 1-D or 2-D array as raw binary plus sidecar.

    The extension picks the on-disk dtype: ``.f32`` or ``.u8``.
    """
    path = Path(path)
    dtype = _DTYPES.get(path.suffix)
    if dtype is None:
        raise DataFormatError(f"unsupported binary extension {path.suffix!r}")
    arr = np.asarray(arr)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(np.ascontiguousarray(arr, dtype=dtype).tobytes())
    sidecar = {
        "format_version": FORMAT_VERSION,
        "dtype": "float32" if dtype == "<f4" else "uint8",
        "byteorder": "little",
        "shape": list(arr.shape),
    }
    sidecar.update(sidecar_extra)
    write_json(_sidecar_path(path), sidecar)


def _read_binary(path: Path) -> tuple[np.ndarray, dict]:
    payload = Path(path).read_bytes()
    sidecar_file = _sidecar_path(path)
    if not sidecar_file.exists():
        raise DataFormatError(f"missing sidecar {sidecar_file}")
    meta = read_json(sidecar_file)
    dtype = _DTYPES.get(path.suffix)
    raw = np.frombuffer(payload, dtype=dtype)
    shape = meta.get("shape")
    if shape is None:
        raise DataFormatError(f"sidecar {sidecar_file} lacks a shape field")
    try:
        arr = raw.reshape(shape)
    except ValueError as exc:
        raise DataFormatError(f"{path}: payload does not match sidecar shape {shape}") from exc
    return arr.astype(float) if path.suffix == ".f32" else arr.copy(), meta


def write_csv_matrix(path, arr: np.ndarray) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.atleast_2d(np.asarray(arr)), fmt="%.10g", delimiter=",")


def read_matrix(path) -> tuple[np.ndarray, dict]:
    """Read a 2-D dataset file (.f32/.u8 with sidecar, or .csv)."""
    path = Path(path)
    if path.suffix in _DTYPES:
        arr, meta = _read_binary(path)
        return np.atleast_2d(arr), meta
    if path.suffix == ".csv":
        arr = np.loadtxt(path, delimiter=",", ndmin=2)
        meta = read_json(_sidecar_path(path)) if _sidecar_path(path).exists() else {}
        return arr, meta
    raise DataFormatError(f"unsupported dataset extension {path.suffix!r}")


def read_vector(path) -> tuple[np.ndarray, dict]:
    """Read a 1-D record (.f32 with sidecar, or single-column/row .csv)."""
    path = Path(path)
    if path.suffix in _DTYPES:
        arr, meta = _read_binary(path)
        return arr.reshape(-1), meta
    if path.suffix == ".csv":
        arr = np.loadtxt(path, delimiter=",")
        meta = read_json(_sidecar_path(path)) if _sidecar_path(path).exists() else {}
        return arr.reshape(-1), meta
    raise DataFormatError(f"unsupported record extension {path.suffix!r}")


def write_vector(path, vec: np.ndarray, **sidecar_extra) -> None:
    path = Path(path)
    if path.suffix in _DTYPES:
        write_array(path, np.asarray(vec).reshape(-1), **sidecar_extra)
    elif path.suffix == ".csv":
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, np.asarray(vec).reshape(-1), fmt="%.10g")
    else:
        raise DataFormatError(f"unsupported record extension {path.suffix!r}")


def write_index_rows(path, rows) -> None:
    """Ragged index CSV: each line is ``record_id,i0,i1,...``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record_id, indices in rows:
            cells = [str(record_id)] + [str(int(i)) for i in indices]
            fh.write(",".join(cells) + "\n")


def read_index_rows(path) -> list[tuple[str, np.ndarray]]:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            try:
                indices = np.asarray([int(c) for c in cells[1:] if c != ""], dtype=np.int64)
            except ValueError as exc:
                raise DataFormatError(f"{path}:{line_no + 1}: non-integer index") from exc
            rows.append((cells[0], indices))
    return rows
