"""Real-artefact augmentation: baseline wander, muscle artifact, powerline.

A bank holds two long pre-converted noise records (250 Hz).  Augmentation
picks one of three categories (pure BW, pure MA, or both), slices a random
window from each active record, scales BW by U[0,10] and MA by U[0,5], and
always adds a 60 Hz sine with amplitude U[0,0.5] and random phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dataio import read_vector
from .errors import ConfigError

BW_SCALE_MAX = 10.0
MA_SCALE_MAX = 5.0
POWERLINE_FREQ = 60.0
POWERLINE_AMP_MAX = 0.5
REQUIRED_RATE = 250.0

CATEGORIES = ("bw", "ma", "bw+ma")


@dataclass(frozen=True)
class ArtefactBank:
    """Immutable pair of noise records; shared freely across workers."""

    bw: np.ndarray
    ma: np.ndarray
    sampling_rate: float = REQUIRED_RATE
    sources: dict = field(default_factory=dict)

    def validate(self, segment_length: int) -> None:
        if self.sampling_rate != REQUIRED_RATE:
            raise ConfigError(
                f"artefact records must be sampled at {REQUIRED_RATE} Hz, got "
                f"{self.sampling_rate}; resample offline first"
            )
        for name, rec in (("bw", self.bw), ("ma", self.ma)):
            if len(rec) < segment_length:
                raise ConfigError(
                    f"artefact record {name!r} has {len(rec)} samples, "
                    f"needs >= {segment_length}"
                )


def load_bank(directory) -> ArtefactBank:
    """Load ``bw`` and ``ma`` records from a directory.

    Accepts ``<name>.f32`` (raw little-endian float32 with a JSON sidecar
    carrying the sampling rate) or ``<name>.csv``.  Other sampling rates are
    rejected, not resampled.
    """
    directory = Path(directory)
    records = {}
    rates = {}
    for name in ("bw", "ma"):
        for ext in (".f32", ".csv"):
            path = directory / f"{name}{ext}"
            if path.exists():
                vec, meta = read_vector(path)
                records[name] = vec
                rates[name] = meta.get("sampling_rate", REQUIRED_RATE)
                break
        else:
            raise ConfigError(f"artefact bank at {directory} is missing {name}.f32/.csv")
    if rates["bw"] != rates["ma"]:
        raise ConfigError("bw and ma records have different sampling rates")
    return ArtefactBank(
        bw=records["bw"],
        ma=records["ma"],
        sampling_rate=float(rates["bw"]),
        sources={"directory": str(directory)},
    )


def compose_artefact(
    length: int,
    bw_window: np.ndarray | None,
    bw_scale: float,
    ma_window: np.ndarray | None,
    ma_scale: float,
    powerline_amp: float,
    powerline_phase: float,
    sampling_rate: float = REQUIRED_RATE,
) -> np.ndarray:
    """Deterministic artefact assembly from explicit windows and multipliers."""
    art = np.zeros(length)
    if bw_window is not None:
        art += bw_scale * bw_window[:length]
    if ma_window is not None:
        art += ma_scale * ma_window[:length]
    t = np.arange(length) / sampling_rate
    art += powerline_amp * np.sin(2.0 * np.pi * POWERLINE_FREQ * t + powerline_phase)
    return art


def augment(segment: np.ndarray, bank: ArtefactBank, seed) -> np.ndarray:
    """Add one randomized artefact realization to a normalized segment.

    The draw order is fixed (category, BW window, MA window, BW scale, MA
    scale, powerline amplitude, powerline phase) and every variate is always
    consumed, so the result is a pure function of ``(segment, bank, seed)``.
    The output is intentionally not re-normalized; downstream filtering and
    normalization handle that.
    """
    segment = np.asarray(segment, dtype=float)
    length = len(segment)
    bank.validate(length)
    if segment.size and np.max(np.abs(segment)) > 1.0 + 1e-9:
        raise ConfigError("segment must be normalized to [-1, 1] before augmentation")

    rng = np.random.default_rng(seed)
    category = CATEGORIES[rng.integers(0, len(CATEGORIES))]
    bw_start = int(rng.integers(0, len(bank.bw) - length + 1))
    ma_start = int(rng.integers(0, len(bank.ma) - length + 1))
    bw_scale = float(rng.uniform(0.0, BW_SCALE_MAX))
    ma_scale = float(rng.uniform(0.0, MA_SCALE_MAX))
    pl_amp = float(rng.uniform(0.0, POWERLINE_AMP_MAX))
    pl_phase = float(rng.uniform(0.0, 2.0 * np.pi))

    use_bw = category in ("bw", "bw+ma")
    use_ma = category in ("ma", "bw+ma")
    art = compose_artefact(
        length,
        bank.bw[bw_start : bw_start + length] if use_bw else None,
        bw_scale,
        bank.ma[ma_start : ma_start + length] if use_ma else None,
        ma_scale,
        pl_amp,
        pl_phase,
        sampling_rate=bank.sampling_rate,
    )
    return segment + art
