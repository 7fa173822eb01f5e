"""Pure-numpy implementations of the hot kernels.

These are the fallback lane used when the compiled extension is unavailable
(or disabled via ``SYNTHECG_PURE=1``).  Both lanes implement identical
arithmetic; the parity suite holds them together.
"""

from __future__ import annotations

import bisect

import numpy as np

TWO_PI = 2.0 * np.pi


def cumulative_quadratic(values: np.ndarray, step: float) -> np.ndarray:
    """Cumulative integral via local quadratic interpolants (O(h^4) accurate).

    Matches the composite-Simpson construction: the first interval uses the
    forward quadratic, later intervals the quadratic through the trailing
    three points.  Output starts at zero.
    """
    n = len(values)
    inc = np.empty(n)
    inc[0] = 0.0
    if n >= 3:
        inc[1] = step / 12.0 * (5.0 * values[0] + 8.0 * values[1] - values[2])
        inc[2:] = step / 12.0 * (-values[:-2] + 8.0 * values[1:-1] + 5.0 * values[2:])
    elif n == 2:
        inc[1] = step / 2.0 * (values[0] + values[1])
    return np.cumsum(inc)


def wave_train(
    cycle_starts: np.ndarray,
    cycle_lengths: np.ndarray,
    offsets: np.ndarray,
    amplitudes: np.ndarray,
    widths: np.ndarray,
    m_pos: np.ndarray,
    m_neg: np.ndarray,
    total: int,
) -> np.ndarray:
    """Summed per-wave gradients, integrated cycle by cycle.

    Each cycle restarts its phase at -pi and its integration baseline at
    zero.  A wave's phase ramp is shifted by its per-wave sample offset and
    truncated at the cycle boundary.
    """
    gradient = np.zeros(total)
    n_cycles = len(cycle_starts)
    n_waves = len(offsets)

    for i in range(n_cycles):
        start = int(cycle_starts[i])
        n = int(cycle_lengths[i])
        if start >= total:
            break
        n_eff = min(n, total - start)
        dphi = TWO_PI / n
        for w in range(n_waves):
            a = amplitudes[w]
            if a == 0.0:
                continue
            off = int(offsets[w])
            j0 = max(0, off)
            j1 = min(n, n + off, n_eff)
            if j1 <= j0:
                continue
            j = np.arange(j0, j1)
            phi = -np.pi + (j - off) * dphi
            b = widths[w]
            m = np.where(phi < 0.0, m_neg[w], m_pos[w])
            gradient[start + j0 : start + j1] += (
                -TWO_PI * m * a * phi / (b * b)
            ) * np.exp(-m * phi * phi / (2.0 * b * b))

    ecg = np.zeros(total)
    for i in range(n_cycles):
        start = int(cycle_starts[i])
        n = int(cycle_lengths[i])
        if start >= total:
            break
        n_eff = min(n, total - start)
        # Per-sample step 1/n makes a complete isolated wave integrate to its
        # amplitude; the fresh start per cycle is the baseline reset.
        ecg[start : start + n_eff] = cumulative_quadratic(gradient[start : start + n_eff], 1.0 / n)
    return ecg


def extract_peaks_core(
    avg: np.ndarray,
    ecg: np.ndarray,
    threshold: float,
    window: int,
    vote_min: int,
    min_distance: int,
) -> tuple[np.ndarray, np.ndarray, dict]:
    """Probability trace -> approved peak indices.

    Stages: threshold, shift-to-signal-maximum within ``window`` samples,
    vote accumulation, then distance suppression (isolated peaks approved
    first, the rest greedily by descending probability, ties to the lower
    index).
    """
    length = len(avg)
    empty = np.empty(0, dtype=np.int64)
    candidates = np.flatnonzero(avg >= threshold)
    diag = {"n_candidates": int(len(candidates))}
    if len(candidates) == 0:
        diag.update(n_targets=0, n_voted=0, n_isolated=0, n_approved=0)
        return empty, np.empty(0), diag

    half = window // 2
    targets = np.empty(len(candidates), dtype=np.int64)
    lo_edge = candidates < half
    hi_edge = candidates > length - (window - half)
    interior = ~(lo_edge | hi_edge)
    if length >= window:
        windows = np.lib.stride_tricks.sliding_window_view(ecg, window)
        rows = candidates[interior] - half
        targets[interior] = rows + np.argmax(windows[rows], axis=1)
    else:
        interior[:] = False
        lo_edge = np.ones(len(candidates), dtype=bool)
    for k in np.flatnonzero(~interior):
        i = int(candidates[k])
        lo = max(0, i - half)
        hi = min(length, i + (window - half))
        targets[k] = lo + int(np.argmax(ecg[lo:hi]))

    uniq, inverse, counts = np.unique(targets, return_inverse=True, return_counts=True)
    prob_sums = np.bincount(inverse, weights=avg[candidates])
    voted_mask = counts >= vote_min
    peaks = uniq[voted_mask]
    mean_probs = prob_sums[voted_mask] / counts[voted_mask]
    diag.update(n_targets=int(len(uniq)), n_voted=int(len(peaks)))
    if len(peaks) == 0:
        diag.update(n_isolated=0, n_approved=0)
        return empty, np.empty(0), diag

    # Peaks with no neighbor closer than min_distance are approved outright.
    gap_prev = np.diff(peaks, prepend=peaks[0] - min_distance)
    gap_next = np.diff(peaks, append=peaks[-1] + min_distance)
    isolated = (gap_prev >= min_distance) & (gap_next >= min_distance)

    approved = sorted(int(p) for p in peaks[isolated])
    contested = peaks[~isolated]
    order = np.lexsort((contested, -avg[contested]))
    for p in contested[order]:
        p = int(p)
        pos = bisect.bisect_left(approved, p)
        if pos > 0 and p - approved[pos - 1] < min_distance:
            continue
        if pos < len(approved) and approved[pos] - p < min_distance:
            continue
        approved.insert(pos, p)

    approved_arr = np.asarray(approved, dtype=np.int64)
    keep = np.isin(peaks, approved_arr)
    diag.update(n_isolated=int(isolated.sum()), n_approved=int(len(approved_arr)))
    return peaks[keep], mean_probs[keep], diag
