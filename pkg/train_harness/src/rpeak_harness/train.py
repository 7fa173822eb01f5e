"""Training loop: dataset in, model artifact plus loss history out."""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

import numpy as np

from .config import TrainConfig
from .data import batch_iterator, generate_dataset, load_dataset
from .model import build_model


def _resolve_dataset(config: TrainConfig, workdir: Path) -> Path:
    if config.dataset is not None:
        return Path(config.dataset)
    n = config.generate_n if config.generate_n else config.examples_needed
    if config.sampling == "stream" and n < config.examples_needed:
        raise ValueError(
            f"streaming unique examples needs >= {config.examples_needed} "
            f"examples, asked to generate {n}"
        )
    return generate_dataset(
        workdir / "train_data",
        n=n,
        scale=config.generate_scale,
        seed=config.generate_seed,
        generator_cmd=config.generator_cmd,
    )


def train(config: TrainConfig, out_dir=None):
    """Train per the configuration; returns ``(model, history dict)``.

    When ``out_dir`` is given the model (``model.keras``) and a JSON metrics
    log (``history.json``) are saved there.
    """
    import tensorflow as tf

    config.validate()
    tf.keras.utils.set_random_seed(config.seed)

    workdir = Path(out_dir) if out_dir is not None else Path(tempfile.mkdtemp(prefix="rpeak_"))
    workdir.mkdir(parents=True, exist_ok=True)
    dataset_dir = _resolve_dataset(config, workdir)
    signals, labels, _ = load_dataset(dataset_dir)
    if config.sampling == "stream" and len(signals) < config.examples_needed:
        raise RuntimeError(
            f"streaming unique examples needs {config.examples_needed}, "
            f"dataset has {len(signals)}"
        )

    batches = batch_iterator(
        signals, labels, config.batch_size, seed=config.seed, sampling=config.sampling
    )

    validation = None
    if config.eval_dataset is not None:
        val_signals, val_labels, _ = load_dataset(config.eval_dataset)
        validation = (val_signals[:, :, None], val_labels[:, :, None])

    model = build_model(learning_rate=config.learning_rate)
    fit_history = model.fit(
        batches,
        epochs=config.epochs,
        steps_per_epoch=config.steps_per_epoch,
        validation_data=validation,
        verbose=2,
    )

    history = {
        "loss": [float(v) for v in fit_history.history.get("loss", [])],
        "auc": [float(v) for v in fit_history.history.get("auc", [])],
        "config": {
            "epochs": config.epochs,
            "steps_per_epoch": config.steps_per_epoch,
            "batch_size": config.batch_size,
            "learning_rate": config.learning_rate,
            "seed": config.seed,
            "sampling": config.sampling,
            "dataset": str(dataset_dir),
            "n_examples": int(len(signals)),
            "n_parameters": int(model.count_params()),
        },
    }
    for key in ("val_loss", "val_auc"):
        if key in fit_history.history:
            history[key] = [float(v) for v in fit_history.history[key]]

    if out_dir is not None:
        model.save(workdir / "model.keras")
        with open(workdir / "history.json", "w", encoding="utf-8") as fh:
            json.dump(history, fh, indent=2)
    return model, history
