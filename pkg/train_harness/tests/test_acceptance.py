"""End-to-end acceptance: train at high randomization, detect and score
held-out low-randomization segments through the generator package's CLI.
"""

import json
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import pytest

from rpeak_harness.config import TrainConfig
from rpeak_harness.data import generate_dataset, load_dataset
from rpeak_harness.predict import predict_record, write_probabilities
from rpeak_harness.train import train

TRAIN_EPOCHS = 5
STEPS = 20
BATCH = 32
N_EVAL = 200
F1_FLOOR = 0.80
TIME_BUDGET_S = 900.0


def _run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "synthecg", *argv],
        capture_output=True,
        text=True,
        timeout=600,
    )
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def _write_record(path: Path, signal: np.ndarray) -> None:
    path.write_bytes(np.ascontiguousarray(signal, dtype="<f4").tobytes())
    sidecar = {
        "format_version": 1,
        "dtype": "float32",
        "byteorder": "little",
        "shape": [len(signal)],
        "sampling_rate": 250.0,
    }
    path.with_suffix(".json").write_text(json.dumps(sidecar))


def test_end_to_end_f1(tf, tmp_path, generator_available):
    started = time.perf_counter()

    # unique high-randomization training examples via the generator CLI
    train_dir = tmp_path / "train_c3"
    generate_dataset(train_dir, n=TRAIN_EPOCHS * STEPS * BATCH, scale=3.0, seed=101)
    config = TrainConfig(
        dataset=str(train_dir),
        epochs=TRAIN_EPOCHS,
        steps_per_epoch=STEPS,
        batch_size=BATCH,
        seed=7,
        sampling="stream",
    )
    model, history = train(config)
    assert history["loss"][-1] < history["loss"][0]

    # held-out low-randomization segments
    eval_dir = tmp_path / "eval_c1"
    generate_dataset(eval_dir, n=N_EVAL, scale=1.0, seed=202)
    signals, _, _ = load_dataset(eval_dir)

    # probability files per record, then detection through the CLI
    probs = model.predict(signals[:, :, None], batch_size=64, verbose=0)
    probs = probs.reshape(N_EVAL, -1).astype(np.float32)
    detect_dir = tmp_path / "detect"
    detect_dir.mkdir()

    def detect_one(k: int) -> tuple[str, list[int]]:
        record_file = detect_dir / f"ecg_{k}.f32"
        prob_file = detect_dir / f"prob_{k}.f32"
        out_file = detect_dir / f"peaks_{k}.csv"
        _write_record(record_file, signals[k])
        write_probabilities(prob_file, probs[None, k], [0], record_length=len(signals[k]))
        _run_cli(
            "detect",
            "--ecg", str(record_file),
            "--prob", str(prob_file),
            "--out", str(out_file),
        )
        cells = out_file.read_text().strip().split(",")
        return str(k), [int(c) for c in cells[1:] if c]

    with ThreadPoolExecutor(max_workers=8) as pool:
        detections = list(pool.map(detect_one, range(N_EVAL)))

    detected_csv = tmp_path / "detected.csv"
    with open(detected_csv, "w", encoding="utf-8") as fh:
        for record_id, indices in detections:
            fh.write(",".join([record_id] + [str(i) for i in indices]) + "\n")

    # ground truth comes straight from the exported dataset
    report = json.loads(
        _run_cli(
            "evaluate",
            "--truth", str(eval_dir / "r_indices.csv"),
            "--detected", str(detected_csv),
        )
    )

    elapsed = time.perf_counter() - started
    print(
        f"\n[ACCEPTANCE] end-to-end: mean F1 {report['mean_f1']:.4f} "
        f"(p10 {report['p10_f1']:.3f}, p90 {report['p90_f1']:.3f}) "
        f"over {report['n_records']} records in {elapsed:.0f}s"
    )
    assert report["n_records"] == N_EVAL
    assert report["mean_f1"] >= F1_FLOOR
    assert elapsed < TIME_BUDGET_S
    print("[ACCEPTANCE] end-to-end smoke: PASS")
