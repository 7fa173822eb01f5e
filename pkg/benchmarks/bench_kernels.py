#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from synthecg._kernels import py as fallback

try:
    from synthecg._kernels import _ext as ext
except ImportError:
    ext = None


def time_fn(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def wave_problem(n_examples=200):
    """A batch of synthesis problems shaped like dataset generation."""
    rng = np.random.default_rng(0)
    problems = []
    for _ in range(n_examples):
        n_cycles = 10
        lengths = rng.integers(180, 260, n_cycles).astype(np.int64)
        starts = np.concatenate(([0], np.cumsum(lengths)[:-1])).astype(np.int64)
        problems.append(
            (
                starts,
                lengths,
                rng.integers(-45, 60, 5).astype(np.int64),
                rng.uniform(-1, 1, 5),
                rng.uniform(0.03, 0.2, 5),
                rng.uniform(1.0, 3.0, 5),
                np.ones(5),
                2000,
            )
        )
    return problems


def detect_problem(n_records=50, length=30_000):
    rng = np.random.default_rng(1)
    problems = []
    for _ in range(n_records):
        avg = rng.uniform(0.0, 0.2, length)
        centers = np.arange(100, length - 100, rng.integers(180, 260))
        ecg = rng.standard_normal(length) * 0.1
        for c in centers:
            avg[c - 4 : c + 5] = rng.uniform(0.3, 1.0)
            ecg[c] += 3.0
        problems.append((avg.clip(0, 1), ecg))
    return problems


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rows = []

    problems = wave_problem()
    py_t = time_fn(lambda: [fallback.wave_train(*p) for p in problems], repeats=args.repeats)
    rows.append(("wave_train x200", py_t, None))
    if ext is not None:
        ext_t = time_fn(lambda: [ext.wave_train(*p) for p in problems], repeats=args.repeats)
        rows[-1] = ("wave_train x200", py_t, ext_t)

    records = detect_problem()
    py_t = time_fn(
        lambda: [fallback.extract_peaks_core(a, e, 0.05, 10, 5, 75) for a, e in records],
        repeats=args.repeats,
    )
    rows.append(("extract_peaks x50 (30k samples)", py_t, None))
    if ext is not None:
        ext_t = time_fn(
            lambda: [ext.extract_peaks_core(a, e, 0.05, 10, 5, 75) for a, e in records],
            repeats=args.repeats,
        )
        rows[-1] = ("extract_peaks x50 (30k samples)", py_t, ext_t)

    print(f"{'kernel':36} {'numpy lane':>12} {'ext lane':>12} {'speedup':>9}")
    for name, py_t, ext_t in rows:
        if ext_t is None:
            print(f"{name:36} {py_t * 1e3:>10.1f}ms {'n/a':>12} {'n/a':>9}")
        else:
            print(f"{name:36} {py_t * 1e3:>10.1f}ms {ext_t * 1e3:>10.1f}ms {py_t / ext_t:>8.1f}x")


if __name__ == "__main__":
    main()
