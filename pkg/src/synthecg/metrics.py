"""Detection scoring: peak matching, precision/recall/F1, aggregation, ROC-AUC."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import ConfigError

DEFAULT_TOLERANCE = 10  # samples; 40 ms at 250 Hz


def _check_increasing(name: str, idx: np.ndarray) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64).reshape(-1)
    if idx.size > 1 and np.any(np.diff(idx) <= 0):
        raise ConfigError(f"{name} indices must be strictly increasing")
    return idx


@dataclass(frozen=True)
class MatchReport:
    """One-to-one matching outcome between truth and detected peak lists."""

    tp: int
    fp: int
    fn: int
    pairs: tuple = field(default=())  # (truth_index, detected_index) per match
    tolerance: int = DEFAULT_TOLERANCE

    @property
    def offsets(self) -> np.ndarray:
        return np.asarray([d - t for t, d in self.pairs], dtype=np.int64)


def match_peaks(truth, detected, tolerance: int = DEFAULT_TOLERANCE) -> MatchReport:
    """Greedy in-order one-to-one matching within ``tolerance`` samples.

    Both lists must be strictly increasing.  Each detection is paired with
    the earliest unmatched truth index within the tolerance, which yields a
    maximum-cardinality matching on the line; unmatched truth counts as FN,
    unmatched detections as FP.
    """
    truth = _check_increasing("truth", truth)
    detected = _check_increasing("detected", detected)
    if tolerance < 0:
        raise ConfigError("tolerance must be >= 0")

    pairs = []
    ti = 0
    for d in detected:
        while ti < len(truth) and truth[ti] < d - tolerance:
            ti += 1
        if ti < len(truth) and abs(int(truth[ti]) - int(d)) <= tolerance:
            pairs.append((int(truth[ti]), int(d)))
            ti += 1
    tp = len(pairs)
    return MatchReport(
        tp=tp,
        fp=len(detected) - tp,
        fn=len(truth) - tp,
        pairs=tuple(pairs),
        tolerance=tolerance,
    )


def precision_recall_f1(report: MatchReport) -> tuple[float, float, float]:
    """Scores from a match report.

    Empty-record convention: a record with no truth and no detections scores
    1.0 on all three metrics, so artifact-free empty segments do not zero
    out aggregates.  Other vanishing denominators score 0.
    """
    tp, fp, fn = report.tp, report.fp, report.fn
    if tp == 0 and fp == 0 and fn == 0:
        return 1.0, 1.0, 1.0
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


@dataclass(frozen=True)
class AggregateReport:
    mean: float
    p10: float
    p90: float
    n_records: int


def nearest_rank_percentile(scores, q: float) -> float:
    """Nearest-rank percentile: the ceil(q*N)-th smallest value (1-based)."""
    values = np.sort(np.asarray(scores, dtype=float))
    if values.size == 0:
        raise ConfigError("need at least one score")
    if not 0.0 < q <= 1.0:
        raise ConfigError("q must be in (0, 1]")
    rank = max(1, int(np.ceil(q * values.size)))
    return float(values[rank - 1])


def aggregate(scores) -> AggregateReport:
    """Mean with 10th/90th nearest-rank percentile whiskers."""
    values = np.asarray(scores, dtype=float)
    if values.size == 0:
        raise ConfigError("need at least one record score")
    return AggregateReport(
        mean=float(values.mean()),
        p10=nearest_rank_percentile(values, 0.10),
        p90=nearest_rank_percentile(values, 0.90),
        n_records=int(values.size),
    )


def roc_auc(labels, probabilities) -> float:
    """Rank-based AUC: P(random positive outranks random negative), ties at 1/2."""
    y = np.asarray(labels).reshape(-1)
    p = np.asarray(probabilities, dtype=float).reshape(-1)
    if y.shape != p.shape:
        raise ConfigError("labels and probabilities must have equal length")
    pos = y != 0
    n_pos = int(pos.sum())
    n_neg = int(y.size - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise ConfigError("ROC-AUC undefined: both classes must be present")
    ranks = stats.rankdata(p)
    return float((ranks[pos].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def snap_to_maximum(indices, signal: np.ndarray, window: int = 16) -> np.ndarray:
    """Shift each index onto the signal maximum within a ``window``-sample span.

    Used when ingesting real-record annotations whose labels may sit slightly
    off the waveform maximum.  The window is ``[i - window//2, i + window -
    window//2)`` clipped to the record.
    """
    idx = _check_increasing("label", indices)
    half = window // 2
    out = np.empty_like(idx)
    for k, i in enumerate(idx):
        lo = max(0, int(i) - half)
        hi = min(len(signal), int(i) + (window - half))
        out[k] = lo + int(np.argmax(signal[lo:hi]))
    return np.unique(out)
