"""Inference: records in, stride-250 probability files out.

The output format is the detection CLI's input contract: a float32 matrix of
per-segment probabilities plus a JSON sidecar carrying the segment offsets
and the record length.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .config import SEGMENT_LENGTH

STRIDE = 250


def segment_offsets(length: int, window: int = SEGMENT_LENGTH, stride: int = STRIDE) -> list[int]:
    """Stride-250 segment starts with a final flush-with-the-end segment."""
    if length <= window:
        return [0]
    offsets = list(range(0, length - window + 1, stride))
    if offsets[-1] != length - window:
        offsets.append(length - window)
    return offsets


def predict_record(model, record: np.ndarray, batch_size: int = 64):
    """Per-segment probabilities for one record; returns (probs, offsets).

    Records shorter than one window are zero-padded for the model and the
    prediction is trimmed back to the record length.
    """
    record = np.asarray(record, dtype=np.float32).reshape(-1)
    length = len(record)
    offsets = segment_offsets(length)
    segments = np.zeros((len(offsets), SEGMENT_LENGTH), dtype=np.float32)
    for k, off in enumerate(offsets):
        chunk = record[off : off + SEGMENT_LENGTH]
        segments[k, : len(chunk)] = chunk
    probs = model.predict(segments[:, :, None], batch_size=batch_size, verbose=0)
    probs = probs.reshape(len(offsets), SEGMENT_LENGTH)
    if length < SEGMENT_LENGTH:
        probs = probs[:, :length]
    return probs.astype(np.float32), offsets


def write_probabilities(path, probs: np.ndarray, offsets: list[int], record_length: int) -> None:
    path = Path(path)
    if path.suffix != ".f32":
        raise ValueError("probability files use the .f32 raw format")
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = np.ascontiguousarray(probs, dtype="<f4")
    path.write_bytes(payload.tobytes())
    sidecar = {
        "format_version": 1,
        "dtype": "float32",
        "byteorder": "little",
        "shape": list(payload.shape),
        "offsets": [int(o) for o in offsets],
        "record_length": int(record_length),
    }
    with open(path.with_suffix(".json"), "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
