"""Dataset access: generator invocation and raw-file loading.

The file reading here deliberately reimplements the documented dataset
format (little-endian float32/uint8 payloads with JSON sidecars) instead of
importing the generator package: the harness boundary is files and
subprocesses only.
"""

from __future__ import annotations

import json
import subprocess
from pathlib import Path

import numpy as np

from .config import SEGMENT_LENGTH, default_generator_cmd


def generate_dataset(
    out_dir,
    n: int,
    scale: float,
    seed: int,
    generator_cmd: list[str] | None = None,
    extra_args: list[str] | None = None,
) -> Path:
    """Invoke the generator CLI to export ``n`` examples; returns the directory."""
    out_dir = Path(out_dir)
    cmd = list(generator_cmd or default_generator_cmd()) + [
        "generate",
        "--n",
        str(n),
        "--scale",
        str(scale),
        "--seed",
        str(seed),
        "--out",
        str(out_dir),
    ] + list(extra_args or [])
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(
            f"generator exited with {proc.returncode}:\n{proc.stderr.strip()}"
        )
    return out_dir


def _read_sidecar(path: Path) -> dict:
    with open(path.with_suffix(".json"), "r", encoding="utf-8") as fh:
        return json.load(fh)


def _read_raw(path: Path, np_dtype) -> np.ndarray:
    meta = _read_sidecar(path)
    data = np.frombuffer(path.read_bytes(), dtype=np_dtype)
    return data.reshape(meta["shape"])


def load_dataset(directory) -> tuple[np.ndarray, np.ndarray, list[np.ndarray]]:
    """Load (signals, labels, r-index lists) from an exported dataset."""
    directory = Path(directory)
    with open(directory / "manifest.json", "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    names = manifest["files"]
    signals = _read_raw(directory / names["signals"], "<f4").astype(np.float32)
    labels = _read_raw(directory / names["labels"], "u1").astype(np.float32)
    r_indices = []
    with open(directory / names["r_indices"], "r", encoding="utf-8") as fh:
        for line in fh:
            cells = line.strip().split(",")
            r_indices.append(np.asarray([int(c) for c in cells[1:] if c], dtype=np.int64))
    if signals.shape[1] != SEGMENT_LENGTH:
        raise ValueError(f"expected {SEGMENT_LENGTH}-sample segments, got {signals.shape}")
    return signals, labels, r_indices


def batch_iterator(
    signals: np.ndarray,
    labels: np.ndarray,
    batch_size: int,
    seed: int,
    sampling: str = "stream",
):
    """Yield (x, y) batches shaped (batch, 1000, 1) indefinitely.

    "stream" walks a seed-shuffled order without replacement and raises if
    the dataset is exhausted (every example is seen exactly once, matching
    on-the-fly generation of unique examples).  "resample" draws uniformly
    with replacement forever.
    """
    rng = np.random.default_rng(seed)
    n = len(signals)
    if sampling == "stream":
        order = rng.permutation(n)
        cursor = 0
        while True:
            if cursor + batch_size > n:
                raise RuntimeError(
                    f"unique-example stream exhausted after {cursor} of {n} examples"
                )
            idx = order[cursor : cursor + batch_size]
            cursor += batch_size
            yield signals[idx, :, None], labels[idx, :, None]
    elif sampling == "resample":
        while True:
            idx = rng.integers(0, n, batch_size)
            yield signals[idx, :, None], labels[idx, :, None]
    else:
        raise ValueError(f"unknown sampling mode {sampling!r}")
