"""Sequence-labeling network: two bidirectional LSTM layers + sigmoid head."""

from __future__ import annotations

import os

os.environ.setdefault("TF_CPP_MIN_LOG_LEVEL", "2")

import tensorflow as tf

from .config import SEGMENT_LENGTH


def build_model(learning_rate: float = 3e-4, units: int = 64) -> tf.keras.Model:
    """1000-sample segment in, per-sample r-wave probability out."""
    model = tf.keras.Sequential(
        [
            tf.keras.layers.Input(shape=(SEGMENT_LENGTH, 1)),
            tf.keras.layers.Bidirectional(tf.keras.layers.LSTM(units, return_sequences=True)),
            tf.keras.layers.Bidirectional(tf.keras.layers.LSTM(units, return_sequences=True)),
            tf.keras.layers.Dense(1, activation="sigmoid"),
        ]
    )
    model.compile(
        loss="binary_crossentropy",
        optimizer=tf.keras.optimizers.Adam(learning_rate=learning_rate),
        metrics=[tf.keras.metrics.AUC(name="auc")],
    )
    return model


def load_model(path) -> tf.keras.Model:
    return tf.keras.models.load_model(path)
