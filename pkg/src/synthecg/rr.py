"""Beat-interval generation: mean rate plus sinusoidal breathing modulation.

Each interval is ``mu + beta * sin(2*pi*f_b*t_i) + gamma`` where ``t_i`` is
the sum of the previously emitted intervals and ``gamma`` is white Gaussian
jitter (off by default; long-range correlated variability is out of scope
because training segments are short).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

#: Hard floor on emitted intervals, in seconds.  Baseline parameter ranges
#: never get near it; it guards heavily scaled draws so downstream phase
#: construction stays valid.
INTERVAL_FLOOR = 0.2


@dataclass(frozen=True)
class RrSeries:
    """Ordered beat intervals with their cumulative start times.

    ``times[i]`` is the sum of intervals before beat ``i`` (``times[0] == 0``).
    ``n_clamped`` counts intervals that hit the positivity floor.
    """

    intervals: np.ndarray
    times: np.ndarray
    n_clamped: int = 0

    @property
    def mean_interval(self) -> float:
        return float(np.mean(self.intervals))


def generate_rr(
    mu: float,
    beta: float,
    f_b: float,
    gamma_sd: float,
    n_beats: int,
    seed,
    clamp: bool = True,
) -> RrSeries:
    """Generate ``n_beats`` intervals; deterministic in ``seed``.

    The Gaussian term is drawn once per beat even when ``gamma_sd == 0`` so
    the same seed produces the same modulation phase regardless of jitter
    settings.  Non-positive intervals are clamped to `INTERVAL_FLOOR` and
    counted (disable with ``clamp=False`` for analysis).
    """
    if mu <= 0:
        raise ConfigError(f"mu must be > 0, got {mu}")
    if n_beats < 1:
        raise ConfigError(f"n_beats must be >= 1, got {n_beats}")
    if gamma_sd < 0:
        raise ConfigError(f"gamma_sd must be >= 0, got {gamma_sd}")
    if f_b <= 0:
        raise ConfigError(f"f_b must be > 0, got {f_b}")

    rng = np.random.default_rng(seed)
    gamma = rng.standard_normal(n_beats) * gamma_sd

    intervals = np.empty(n_beats)
    times = np.empty(n_beats)
    t = 0.0
    n_clamped = 0
    two_pi_fb = 2.0 * math.pi * f_b
    for i in range(n_beats):
        rr = mu + beta * math.sin(two_pi_fb * t) + gamma[i]
        if clamp and rr < INTERVAL_FLOOR:
            rr = INTERVAL_FLOOR
            n_clamped += 1
        intervals[i] = rr
        times[i] = t
        t += rr

    return RrSeries(intervals=intervals, times=times, n_clamped=n_clamped)
