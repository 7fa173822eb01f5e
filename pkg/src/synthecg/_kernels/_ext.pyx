# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure-numpy kernels (see ``py.py``).

The arithmetic mirrors the fallback lane expression by expression so both
lanes agree to floating-point round-off; the parity suite enforces it.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, M_PI

cnp.import_array()

cdef double TWO_PI = 2.0 * M_PI


def cumulative_quadratic(double[::1] values, double step):
    cdef Py_ssize_t n = values.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double run = 0.0
    cdef Py_ssize_t i
    if n == 0:
        return out_arr
    out[0] = 0.0
    if n >= 3:
        run = step / 12.0 * (5.0 * values[0] + 8.0 * values[1] - values[2])
        out[1] = run
        for i in range(2, n):
            run = run + step / 12.0 * (-values[i - 2] + 8.0 * values[i - 1] + 5.0 * values[i])
            out[i] = run
    elif n == 2:
        out[1] = step / 2.0 * (values[0] + values[1])
    return out_arr


def wave_train(
    cnp.int64_t[::1] cycle_starts,
    cnp.int64_t[::1] cycle_lengths,
    cnp.int64_t[::1] offsets,
    double[::1] amplitudes,
    double[::1] widths,
    double[::1] m_pos,
    double[::1] m_neg,
    Py_ssize_t total,
):
    gradient_arr = np.zeros(total)
    ecg_arr = np.zeros(total)
    cdef double[::1] gradient = gradient_arr
    cdef double[::1] ecg = ecg_arr
    cdef Py_ssize_t n_cycles = cycle_starts.shape[0]
    cdef Py_ssize_t n_waves = offsets.shape[0]
    cdef Py_ssize_t i, w, j, j0, j1, start, n, n_eff
    cdef cnp.int64_t off
    cdef double dphi, a, b, phi, m, run, step

    for i in range(n_cycles):
        start = cycle_starts[i]
        n = cycle_lengths[i]
        if start >= total:
            break
        n_eff = min(n, total - start)
        dphi = TWO_PI / n
        for w in range(n_waves):
            a = amplitudes[w]
            if a == 0.0:
                continue
            off = offsets[w]
            j0 = max(0, <Py_ssize_t> off)
            j1 = min(n, n + <Py_ssize_t> off)
            if j1 > n_eff:
                j1 = n_eff
            if j1 <= j0:
                continue
            b = widths[w]
            for j in range(j0, j1):
                phi = -M_PI + (j - off) * dphi
                m = m_neg[w] if phi < 0.0 else m_pos[w]
                gradient[start + j] = gradient[start + j] + (
                    -TWO_PI * m * a * phi / (b * b)
                ) * exp(-m * phi * phi / (2.0 * b * b))

    for i in range(n_cycles):
        start = cycle_starts[i]
        n = cycle_lengths[i]
        if start >= total:
            break
        n_eff = min(n, total - start)
        step = 1.0 / n
        if n_eff == 0:
            continue
        ecg[start] = 0.0
        if n_eff >= 3:
            run = step / 12.0 * (
                5.0 * gradient[start] + 8.0 * gradient[start + 1] - gradient[start + 2]
            )
            ecg[start + 1] = run
            for j in range(2, n_eff):
                run = run + step / 12.0 * (
                    -gradient[start + j - 2]
                    + 8.0 * gradient[start + j - 1]
                    + 5.0 * gradient[start + j]
                )
                ecg[start + j] = run
        elif n_eff == 2:
            ecg[start + 1] = step / 2.0 * (gradient[start] + gradient[start + 1])
    return ecg_arr


def extract_peaks_core(
    double[::1] avg,
    double[::1] ecg,
    double threshold,
    Py_ssize_t window,
    Py_ssize_t vote_min,
    Py_ssize_t min_distance,
):
    cdef Py_ssize_t length = avg.shape[0]
    cdef Py_ssize_t half = window // 2
    cdef Py_ssize_t i, lo, hi, j, best, n_cand, k

    candidates_arr = np.flatnonzero(np.asarray(avg) >= threshold).astype(np.int64)
    n_cand = candidates_arr.shape[0]
    diag = {"n_candidates": int(n_cand)}
    if n_cand == 0:
        diag.update(n_targets=0, n_voted=0, n_isolated=0, n_approved=0)
        return np.empty(0, dtype=np.int64), np.empty(0), diag

    cdef cnp.int64_t[::1] candidates = candidates_arr
    targets_arr = np.empty(n_cand, dtype=np.int64)
    cdef cnp.int64_t[::1] targets = targets_arr
    for k in range(n_cand):
        i = candidates[k]
        lo = i - half
        if lo < 0:
            lo = 0
        hi = i + (window - half)
        if hi > length:
            hi = length
        best = lo
        for j in range(lo + 1, hi):
            if ecg[j] > ecg[best]:
                best = j
        targets[k] = best

    uniq, inverse, counts = np.unique(targets_arr, return_inverse=True, return_counts=True)
    prob_sums = np.bincount(inverse, weights=np.asarray(avg)[candidates_arr])
    voted_mask = counts >= vote_min
    peaks_arr = uniq[voted_mask]
    mean_probs = prob_sums[voted_mask] / counts[voted_mask]
    diag.update(n_targets=int(len(uniq)), n_voted=int(len(peaks_arr)))
    cdef Py_ssize_t n_peaks = len(peaks_arr)
    if n_peaks == 0:
        diag.update(n_isolated=0, n_approved=0)
        return np.empty(0, dtype=np.int64), np.empty(0), diag

    cdef cnp.int64_t[::1] peaks = peaks_arr
    isolated_arr = np.zeros(n_peaks, dtype=np.uint8)
    cdef cnp.uint8_t[::1] isolated = isolated_arr
    cdef Py_ssize_t n_isolated = 0
    for k in range(n_peaks):
        if (k == 0 or peaks[k] - peaks[k - 1] >= min_distance) and (
            k == n_peaks - 1 or peaks[k + 1] - peaks[k] >= min_distance
        ):
            isolated[k] = 1
            n_isolated += 1

    import bisect

    approved = [int(peaks[k]) for k in range(n_peaks) if isolated[k]]
    contested_arr = peaks_arr[~isolated_arr.view(bool)]
    order = np.lexsort((contested_arr, -np.asarray(avg)[contested_arr]))
    cdef Py_ssize_t p, pos
    for k in range(len(order)):
        p = contested_arr[order[k]]
        pos = bisect.bisect_left(approved, p)
        if pos > 0 and p - approved[pos - 1] < min_distance:
            continue
        if pos < len(approved) and approved[pos] - p < min_distance:
            continue
        approved.insert(pos, p)

    approved_arr = np.asarray(approved, dtype=np.int64)
    keep = np.isin(peaks_arr, approved_arr)
    diag.update(n_isolated=int(n_isolated), n_approved=int(len(approved_arr)))
    return peaks_arr[keep], mean_probs[keep], diag
