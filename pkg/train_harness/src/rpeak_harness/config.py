"""Training configuration."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

SEGMENT_LENGTH = 1000


def default_generator_cmd() -> list[str]:
    """Command prefix for the synthetic-ECG generator CLI."""
    return [sys.executable, "-m", "synthecg"]


@dataclass
class TrainConfig:
    """Hyperparameters and data source for one training run.

    ``dataset`` points at a pre-generated dataset directory.  When it is
    None, ``generate_n`` examples are produced up front by invoking the
    generator CLI (every example unique, standing in for on-the-fly
    generation) with scaling coefficient ``generate_scale``.
    """

    dataset: str | None = None
    generate_n: int | None = None
    generate_scale: float = 3.0
    generate_seed: int = 0
    generator_cmd: list[str] = field(default_factory=default_generator_cmd)

    epochs: int = 30
    steps_per_epoch: int = 20
    batch_size: int = 32
    learning_rate: float = 3e-4
    seed: int = 0

    #: "stream": walk the dataset without replacement (unique examples, the
    #: on-the-fly protocol).  "resample": draw uniformly with replacement
    #: (the finite pre-generated protocol).
    sampling: str = "stream"

    #: Optional dataset directory evaluated after every epoch (loss + AUC).
    eval_dataset: str | None = None

    def validate(self) -> None:
        if self.epochs < 1 or self.steps_per_epoch < 1 or self.batch_size < 1:
            raise ValueError("epochs, steps_per_epoch and batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.sampling not in ("stream", "resample"):
            raise ValueError(f"unknown sampling mode {self.sampling!r}")
        if self.dataset is None and self.generate_n is None:
            raise ValueError("either dataset or generate_n must be set")

    @property
    def examples_needed(self) -> int:
        return self.epochs * self.steps_per_epoch * self.batch_size
