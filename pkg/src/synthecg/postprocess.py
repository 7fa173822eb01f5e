"""Turn per-sample r-wave probabilities into unambiguous peak indices.

A long record is predicted in 1000-sample segments with 750-sample overlap;
overlapping predictions are averaged per sample, then peaks are extracted by
thresholding, shifting candidates onto the signal maximum, majority voting,
and minimum-distance suppression.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ConfigError

WINDOW = 1000
STRIDE = 250

DEFAULT_THRESHOLD = 0.05
MAX_SHIFT_WINDOW = 10
VOTE_MIN = 5
MIN_DISTANCE = 75


def segment_offsets(length: int, window: int = WINDOW, stride: int = STRIDE) -> list[int]:
    """Segment start offsets covering a record of ``length`` samples.

    Offsets advance by ``stride``; when the record length is not on the
    stride grid a final flush-with-the-end offset is appended so every
    sample is covered.  Records shorter than one window get a single
    segment.
    """
    if length <= 0:
        raise ConfigError("record length must be > 0")
    if length <= window:
        return [0]
    offsets = list(range(0, length - window + 1, stride))
    if offsets[-1] != length - window:
        offsets.append(length - window)
    return offsets


def windowed_average(
    traces,
    offsets,
    length: int,
    window: int = WINDOW,
    stride: int = STRIDE,
) -> np.ndarray:
    """Per-sample mean over all segment predictions covering each sample.

    Interior samples are covered by ``window / stride`` segments (four with
    the defaults), edge samples by fewer.  The segment geometry must match
    `segment_offsets` for the record length.
    """
    offsets = [int(o) for o in offsets]
    if offsets != segment_offsets(length, window, stride):
        raise ConfigError(
            f"segment offsets {offsets} do not match the stride-{stride} "
            f"geometry for a record of {length} samples"
        )
    if len(traces) != len(offsets):
        raise ConfigError(f"{len(traces)} traces but {len(offsets)} offsets")

    sums = np.zeros(length)
    counts = np.zeros(length)
    for trace, off in zip(traces, offsets):
        trace = np.asarray(trace, dtype=float)
        expected = min(window, length - off)
        if len(trace) != expected:
            raise ConfigError(
                f"trace at offset {off} has {len(trace)} samples, expected {expected}"
            )
        sums[off : off + expected] += trace
        counts[off : off + expected] += 1.0
    return sums / counts


@dataclass(frozen=True)
class DetectionResult:
    """Approved peak indices with per-peak mean probability and stage counts."""

    indices: np.ndarray
    probabilities: np.ndarray
    diagnostics: dict = field(default_factory=dict)


def extract_peaks(
    avg: np.ndarray,
    ecg: np.ndarray,
    threshold: float = DEFAULT_THRESHOLD,
    max_shift_window: int = MAX_SHIFT_WINDOW,
    vote_min: int = VOTE_MIN,
    min_distance: int = MIN_DISTANCE,
) -> DetectionResult:
    """Extract r-wave indices from an averaged probability trace.

    Stages: (1) keep samples with probability >= ``threshold``; (2) shift
    each onto the signal maximum within ``max_shift_window`` samples
    (``[i-5, i+4]`` for the default 10); (3) keep target indices that
    received at least ``vote_min`` shifted candidates; (4) approve isolated
    targets outright, then the rest greedily by descending probability
    (ties to the lower index) subject to ``min_distance``.
    """
    avg = np.ascontiguousarray(avg, dtype=float)
    ecg = np.ascontiguousarray(ecg, dtype=float)
    if avg.shape != ecg.shape or avg.ndim != 1:
        raise ConfigError("probability trace and signal must be equal-length 1-D arrays")
    if avg.size and (avg.min() < 0.0 or avg.max() > 1.0):
        raise ConfigError("probabilities must lie in [0, 1]")
    if min_distance < 1 or vote_min < 1 or max_shift_window < 1:
        raise ConfigError("post-processing parameters must be >= 1")

    indices, probs, diag = _kernels.extract_peaks_core(
        avg, ecg, float(threshold), int(max_shift_window), int(vote_min), int(min_distance)
    )
    return DetectionResult(indices=indices, probabilities=probs, diagnostics=diag)


def detect_record(
    ecg: np.ndarray,
    traces,
    offsets,
    threshold: float = DEFAULT_THRESHOLD,
    min_distance: int = MIN_DISTANCE,
) -> DetectionResult:
    """Average overlapping segment predictions for a record, then extract peaks."""
    avg = windowed_average(traces, offsets, len(ecg))
    return extract_peaks(avg, ecg, threshold=threshold, min_distance=min_distance)
