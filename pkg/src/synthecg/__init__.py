"""Domain-randomized synthetic ECG toolchain.

Library surface: parameter spaces and seeded draws (`params`), beat-interval
and waveform synthesis (`rr`, `waveform`), spectral noise (`noise`), artefact
augmentation (`artefacts`), the dataset generator (`pipeline`), r-wave
post-processing (`postprocess`) and detection metrics (`metrics`).  The
``synthecg`` CLI wires them together.
"""

__version__ = "0.1.0"

from .errors import ConfigError, DataFormatError, DegenerateRangeError, SynthEcgError
from .params import (
    ParameterDraw,
    ParameterSpace,
    default_space,
    sample_draw,
    scale_range,
)
from .rr import RrSeries, generate_rr
from .noise import NoiseSpec, generate_noise
from .waveform import CleanEcg, synthesize_clean, wave_gradient
from .conditioning import bandpass, make_labels, normalize
from .pipeline import GenerationConfig, LabeledSegment, export_dataset, next_example
from .postprocess import DetectionResult, extract_peaks, segment_offsets, windowed_average
from .metrics import MatchReport, aggregate, match_peaks, precision_recall_f1, roc_auc

__all__ = [
    "__version__",
    "SynthEcgError",
    "ConfigError",
    "DegenerateRangeError",
    "DataFormatError",
    "ParameterSpace",
    "ParameterDraw",
    "default_space",
    "sample_draw",
    "scale_range",
    "RrSeries",
    "generate_rr",
    "NoiseSpec",
    "generate_noise",
    "CleanEcg",
    "synthesize_clean",
    "wave_gradient",
    "bandpass",
    "make_labels",
    "normalize",
    "GenerationConfig",
    "LabeledSegment",
    "export_dataset",
    "next_example",
    "DetectionResult",
    "extract_peaks",
    "segment_offsets",
    "windowed_average",
    "MatchReport",
    "match_peaks",
    "precision_recall_f1",
    "aggregate",
    "roc_auc",
]
