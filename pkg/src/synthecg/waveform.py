"""Clean ECG synthesis from a parameter draw and a beat-interval series.

Each cardiac cycle carries a linear phase ramp over [-pi, pi); every
characteristic wave contributes the gradient of a (possibly asymmetric)
Gaussian bump on its own delayed copy of that ramp.  The summed gradients
are cumulatively integrated, cycle by cycle, into the trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ConfigError
from .params import WAVE_NAMES, ParameterDraw
from .rr import RrSeries


def wave_gradient(
    phase: np.ndarray,
    amplitude: float,
    width: float,
    m_pos: float = 1.0,
    m_neg: float = 1.0,
) -> np.ndarray:
    """Gradient of one Gaussian-shaped wave evaluated on a phase signal.

    The shape exponent is ``m_neg`` on the rising (negative-phase) side and
    ``m_pos`` on the falling side, which skews the integrated bump.  At
    ``phase == 0`` the gradient vanishes: that sample is the wave apex.
    """
    if width <= 0:
        raise ConfigError(f"width must be > 0, got {width}")
    if m_pos <= 0 or m_neg <= 0:
        raise ConfigError("asymmetry exponents must be > 0")
    phi = np.asarray(phase, dtype=float)
    m = np.where(phi < 0.0, m_neg, m_pos)
    b2 = width * width
    return (-2.0 * np.pi * m * amplitude * phi / b2) * np.exp(-m * phi * phi / (2.0 * b2))


def cycle_phase(n_samples: int, offset: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Phase ramp of one cycle, shifted by ``offset`` samples.

    Returns ``(phase, valid)`` where ``valid`` marks the samples that remain
    inside the cycle after the shift (the rest are truncated).
    """
    j = np.arange(n_samples)
    phase = -np.pi + (j - offset) * (2.0 * np.pi / n_samples)
    valid = (j >= offset) & (j < n_samples + offset)
    return phase, valid


@dataclass(frozen=True)
class CleanEcg:
    """Noise-free synthetic trace plus its ground truth."""

    signal: np.ndarray
    r_indices: np.ndarray
    rr: RrSeries
    draw: ParameterDraw
    #: Waves whose sample offset exceeded at least one full cycle (dropped there).
    truncated_waves: tuple[str, ...] = field(default=())


def synthesize_clean(
    draw: ParameterDraw,
    rr: RrSeries,
    n_samples: int,
    sampling_rate: float,
) -> CleanEcg:
    """Render ``n_samples`` of clean ECG; requires ``rr`` to cover them.

    The t-wave delay contracts with heart rate: it is multiplied by
    ``sqrt(mean RR / 1 s)``.  Cycle lengths round to the nearest sample and
    the phase restarts each cycle, so rounding never accumulates drift.
    """
    fs = float(sampling_rate)
    if fs <= 0:
        raise ConfigError("sampling_rate must be > 0")
    cycle_lengths = np.rint(rr.intervals * fs).astype(np.int64)
    if np.any(cycle_lengths < 2):
        raise ConfigError("a cycle shorter than 2 samples; sampling rate too low")
    cycle_starts = np.concatenate(([0], np.cumsum(cycle_lengths)[:-1]))
    covered = int(cycle_starts[-1] + cycle_lengths[-1])
    if covered < n_samples:
        raise ConfigError(
            f"rr series covers {covered} samples but {n_samples} requested"
        )

    t_scale = np.sqrt(rr.mean_interval / 1.0)
    offsets = np.empty(len(WAVE_NAMES), dtype=np.int64)
    amplitudes = np.empty(len(WAVE_NAMES))
    widths = np.empty(len(WAVE_NAMES))
    m_pos = np.empty(len(WAVE_NAMES))
    m_neg = np.ones(len(WAVE_NAMES))
    for k, w in enumerate(WAVE_NAMES):
        wp = draw.waves[w]
        delay = wp.delay * t_scale if w == "t" else wp.delay
        offsets[k] = np.int64(np.rint(delay * fs))
        amplitudes[k] = wp.amplitude
        widths[k] = wp.width
        m_pos[k] = wp.asymmetry

    min_cycle = int(cycle_lengths.min())
    truncated = tuple(
        w for k, w in enumerate(WAVE_NAMES)
        if amplitudes[k] != 0.0 and abs(int(offsets[k])) >= min_cycle
    )

    signal = _kernels.wave_train(
        cycle_starts, cycle_lengths, offsets, amplitudes, widths, m_pos, m_neg, n_samples
    )

    # The r apex sits at the first non-negative phase sample of each cycle.
    apex = cycle_starts + (cycle_lengths + 1) // 2
    r_indices = apex[apex < n_samples]

    return CleanEcg(
        signal=signal,
        r_indices=r_indices.astype(np.int64),
        rr=rr,
        draw=draw,
        truncated_waves=truncated,
    )
