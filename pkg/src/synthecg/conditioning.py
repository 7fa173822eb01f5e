"""Label construction, band-pass filtering and amplitude normalization.

These three steps are shared verbatim by the training pipeline and by
inference-time record preparation: label (synthetic only), optionally
augment, band-pass 0.5-50 Hz, normalize to [-1, 1].
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy import signal as sps

from .errors import ConfigError

LABEL_HALF_WIDTH = 2  # five ones centered on each r apex


def make_labels(r_indices, length: int) -> np.ndarray:
    """Binary label vector: ones at ``i-2 .. i+2`` for each r index, clipped."""
    idx = np.asarray(r_indices, dtype=np.int64)
    if idx.size and (np.any(idx < 0) or np.any(idx >= length)):
        raise ConfigError(f"r indices out of range [0, {length})")
    if idx.size > 1 and np.any(np.diff(idx) <= 0):
        raise ConfigError("r indices must be strictly increasing")
    labels = np.zeros(length, dtype=np.uint8)
    for i in idx:
        labels[max(0, i - LABEL_HALF_WIDTH) : min(length, i + LABEL_HALF_WIDTH + 1)] = 1
    return labels


def bandpass_coefficients(sampling_rate: float, low: float = 0.5, high: float = 50.0):
    """Biquad band-pass (single second-order section) via the bilinear transform."""
    if sampling_rate <= 100.0:
        raise ConfigError(f"sampling_rate must exceed 100 Hz, got {sampling_rate}")
    return sps.butter(1, [low, high], btype="bandpass", fs=sampling_rate)


def bandpass(
    x: np.ndarray,
    sampling_rate: float,
    zero_phase: bool = False,
    low: float = 0.5,
    high: float = 50.0,
) -> np.ndarray:
    """Apply the band-pass once, forward by default.

    ``zero_phase=True`` runs it forward-backward instead; label positions are
    never phase-compensated either way.
    """
    b, a = bandpass_coefficients(sampling_rate, low, high)
    if zero_phase:
        return sps.filtfilt(b, a, x)
    return sps.lfilter(b, a, x)


def normalize(x: np.ndarray) -> np.ndarray:
    """Affine map onto [-1, 1]; a constant input degenerates to zeros (warned)."""
    x = np.asarray(x, dtype=float)
    lo = x.min()
    span = x.max() - lo
    if span == 0.0:
        warnings.warn("normalize: constant signal, returning zeros", RuntimeWarning)
        return np.zeros_like(x)
    return (x - lo) * (2.0 / span) - 1.0


def condition_segment(
    x: np.ndarray,
    sampling_rate: float,
    augment_fn=None,
    zero_phase: bool = False,
) -> np.ndarray:
    """Shared tail of the sample pipeline: (normalize+augment)? -> filter -> normalize."""
    if augment_fn is not None:
        x = augment_fn(normalize(x))
    return normalize(bandpass(x, sampling_rate, zero_phase=zero_phase))
