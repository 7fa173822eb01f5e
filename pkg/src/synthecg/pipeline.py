"""The example generator: unlimited unique labeled segments, deterministically.

Example ``i`` of a run is a pure function of ``(master_seed, i)``: parameter
draw, beat intervals, clean trace, spectral noise, a random 1000-sample
window (randomizing the cycle start), labels, optional artefact
augmentation, band-pass and normalization.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from ._kernels import KERNEL_LANE
from .artefacts import ArtefactBank, augment, load_bank
from .conditioning import condition_segment, make_labels
from .dataio import (
    FORMAT_VERSION,
    read_index_rows,
    read_json,
    read_matrix,
    write_array,
    write_csv_matrix,
    write_index_rows,
    write_json,
)
from .errors import ConfigError
from .noise import NoiseSpec, generate_noise
from .params import ParameterSpace, sample_draw, space_from_json_dict, space_to_json_dict
from .rr import INTERVAL_FLOOR, generate_rr
from .waveform import synthesize_clean

SEGMENT_LENGTH = 1000

_STAGE_DRAW, _STAGE_RR, _STAGE_NOISE, _STAGE_WINDOW, _STAGE_ARTEFACT = range(5)


@dataclass(frozen=True)
class LabeledSegment:
    """Fixed-length training example: signal, binary labels, ground truth."""

    signal: np.ndarray
    labels: np.ndarray
    r_indices: np.ndarray
    provenance: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GenerationConfig:
    space: ParameterSpace
    master_seed: int
    n_examples: int | None = None
    segment_length: int = SEGMENT_LENGTH
    margin: int = SEGMENT_LENGTH
    augment: bool = False
    artefact_bank: ArtefactBank | None = None
    artefact_bank_dir: str | None = None
    zero_phase: bool = False
    export_format: str = "f32"

    def validate(self) -> None:
        self.space.validate()
        if self.segment_length <= 0:
            raise ConfigError("segment_length must be > 0")
        if self.margin < 0:
            raise ConfigError("margin must be >= 0")
        if self.augment and self.artefact_bank is None and self.artefact_bank_dir is None:
            raise ConfigError("augmentation requested but no artefact bank configured")
        if self.export_format not in ("f32", "csv"):
            raise ConfigError(f"unknown export format {self.export_format!r}")
        if self.n_examples is not None and self.n_examples < 1:
            raise ConfigError("n_examples must be >= 1")

    def bank(self) -> ArtefactBank | None:
        if not self.augment:
            return None
        if self.artefact_bank is not None:
            return self.artefact_bank
        return load_bank(self.artefact_bank_dir)


def example_seed(master_seed: int, index: int) -> int:
    """Stable per-example seed material derived from the master seed."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def _stage_seed(seed: int, stage: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(stage,))


def next_example(config: GenerationConfig, index: int, bank: ArtefactBank | None = None) -> LabeledSegment:
    """Generate example ``index``; every stage has its own derived seed."""
    config.validate()
    space = config.space
    fs = space.sampling_rate
    seed = example_seed(config.master_seed, index)

    draw = sample_draw(space, _stage_seed(seed, _STAGE_DRAW))

    total = config.segment_length + config.margin
    n_beats = math.ceil(total / (INTERVAL_FLOOR * fs)) + 3
    series = generate_rr(
        draw.mu,
        draw.breathing_coupling,
        draw.breathing_freq,
        draw.gamma_sd,
        n_beats,
        _stage_seed(seed, _STAGE_RR),
    )
    clean = synthesize_clean(draw, series, total, fs)

    spec = NoiseSpec(draw.rho, draw.alpha, draw.sigma, total, fs)
    signal = clean.signal + generate_noise(spec, _stage_seed(seed, _STAGE_NOISE))

    offset = int(
        np.random.default_rng(_stage_seed(seed, _STAGE_WINDOW)).integers(0, config.margin + 1)
    )
    window = signal[offset : offset + config.segment_length]
    in_window = (clean.r_indices >= offset) & (clean.r_indices < offset + config.segment_length)
    r_indices = clean.r_indices[in_window] - offset
    labels = make_labels(r_indices, config.segment_length)

    if config.augment:
        bank = bank if bank is not None else config.bank()
        art_seed = _stage_seed(seed, _STAGE_ARTEFACT)
        augment_fn = lambda s: augment(s, bank, art_seed)  # noqa: E731
    else:
        augment_fn = None
    conditioned = condition_segment(window, fs, augment_fn, config.zero_phase)

    return LabeledSegment(
        signal=conditioned,
        labels=labels,
        r_indices=r_indices,
        provenance={"index": index, "seed": seed, "window_offset": offset},
    )


def iter_examples(config: GenerationConfig, start: int = 0, count: int | None = None):
    """Stream examples; unbounded when ``count`` (and config n) is None."""
    bank = config.bank()
    n = count if count is not None else config.n_examples
    index = start
    while n is None or index < start + n:
        yield next_example(config, index, bank=bank)
        index += 1


# -- export -----------------------------------------------------------------

_WORKER_CONFIG: GenerationConfig | None = None
_WORKER_BANK: ArtefactBank | None = None


def _worker_init(config: GenerationConfig) -> None:
    global _WORKER_CONFIG, _WORKER_BANK
    _WORKER_CONFIG = config
    _WORKER_BANK = config.bank()


def _worker_generate(index: int):
    ex = next_example(_WORKER_CONFIG, index, bank=_WORKER_BANK)
    return index, ex.signal, ex.labels, ex.r_indices, ex.provenance


def build_manifest(config: GenerationConfig, n: int) -> dict:
    config.validate()
    return {
        "format_version": FORMAT_VERSION,
        "tool": {"name": "synthecg", "version": __version__, "kernel_lane": KERNEL_LANE},
        "master_seed": int(config.master_seed),
        "n_examples": int(n),
        "segment_length": config.segment_length,
        "margin": config.margin,
        "augment": config.augment,
        "artefact_bank": config.artefact_bank_dir,
        "zero_phase": config.zero_phase,
        "export_format": config.export_format,
        "space": space_to_json_dict(config.space),
        "example_seeds": [example_seed(config.master_seed, i) for i in range(n)],
        "files": _file_names(config.export_format),
    }


def _file_names(export_format: str) -> dict:
    if export_format == "f32":
        return {
            "signals": "signals.f32",
            "labels": "labels.u8",
            "r_indices": "r_indices.csv",
            "manifest": "manifest.json",
        }
    return {
        "signals": "signals.csv",
        "labels": "labels.csv",
        "r_indices": "r_indices.csv",
        "manifest": "manifest.json",
    }


def export_dataset(config: GenerationConfig, out_dir, jobs: int = 1) -> dict:
    """Generate ``config.n_examples`` examples and write them under ``out_dir``.

    Generation parallelizes across example indices (``jobs``); results are
    written in index order by this process so output bytes are independent
    of worker count.
    """
    config.validate()
    if config.n_examples is None:
        raise ConfigError("export requires a finite n_examples")
    n = config.n_examples
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    signals = np.empty((n, config.segment_length), dtype=np.float32)
    labels = np.empty((n, config.segment_length), dtype=np.uint8)
    index_rows: list[tuple[str, np.ndarray]] = [None] * n  # type: ignore[list-item]

    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_worker_init, initargs=(config,)
        ) as pool:
            for index, sig, lab, ridx, _prov in pool.map(
                _worker_generate, range(n), chunksize=max(1, n // (jobs * 4))
            ):
                signals[index] = sig
                labels[index] = lab
                index_rows[index] = (str(index), ridx)
    else:
        for index, ex in enumerate(iter_examples(config, count=n)):
            signals[index] = ex.signal
            labels[index] = ex.labels
            index_rows[index] = (str(index), ex.r_indices)

    manifest = build_manifest(config, n)
    names = manifest["files"]
    if config.export_format == "f32":
        write_array(out_dir / names["signals"], signals, sampling_rate=config.space.sampling_rate)
        write_array(out_dir / names["labels"], labels)
    else:
        write_csv_matrix(out_dir / names["signals"], signals)
        write_csv_matrix(out_dir / names["labels"], labels)
    write_index_rows(out_dir / names["r_indices"], index_rows)
    write_json(out_dir / names["manifest"], manifest)
    return manifest


def config_from_manifest(doc: dict) -> GenerationConfig:
    """Rebuild a generation config from a manifest for bit-exact replay."""
    try:
        return GenerationConfig(
            space=space_from_json_dict(doc["space"]),
            master_seed=doc["master_seed"],
            n_examples=doc["n_examples"],
            segment_length=doc["segment_length"],
            margin=doc["margin"],
            augment=doc["augment"],
            artefact_bank_dir=doc.get("artefact_bank"),
            zero_phase=doc.get("zero_phase", False),
            export_format=doc.get("export_format", "f32"),
        )
    except KeyError as exc:
        raise ConfigError(f"manifest is missing field {exc}") from exc


def load_dataset(directory):
    """Read back an exported dataset: (signals, labels, index rows, manifest)."""
    directory = Path(directory)
    manifest = read_json(directory / "manifest.json")
    names = manifest["files"]
    signals, _ = read_matrix(directory / names["signals"])
    labels, _ = read_matrix(directory / names["labels"])
    rows = read_index_rows(directory / names["r_indices"])
    return signals, labels, rows, manifest
