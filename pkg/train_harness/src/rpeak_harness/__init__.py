"""Desk-scale recurrent-network training harness for r-wave detection.

Consumes datasets produced by the ``synthecg`` CLI (raw float32/uint8 files
with JSON sidecars), trains a bidirectional-LSTM sequence labeler, and emits
per-segment probability files that the ``synthecg detect`` post-processing
consumes.  All communication with the generator is via subprocess and files.
"""

__version__ = "0.1.0"

from .config import TrainConfig
from .data import generate_dataset, load_dataset
from .model import build_model
from .predict import predict_record, segment_offsets, write_probabilities
from .train import train

__all__ = [
    "__version__",
    "TrainConfig",
    "build_model",
    "generate_dataset",
    "load_dataset",
    "predict_record",
    "segment_offsets",
    "write_probabilities",
    "train",
]
