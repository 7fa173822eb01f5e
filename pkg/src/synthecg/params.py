"""Randomizable generator parameters: baseline ranges, range scaling, seeded draws.

Every adjustable quantity is stored as a ``(low, high)`` pair; constants are
degenerate pairs with ``low == high``.  A scaling coefficient ``C`` widens (or
narrows) each range around its baseline, with separate coefficients for the
RR-interval, waveform-shape, fiducial-point and noise groups.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from .errors import ConfigError, DegenerateRangeError

WAVE_NAMES = ("p", "q", "r", "s", "t")

#: Scaling modes for `scale_range`.
#:  "symmetric"    -- both limits move outward by the same amount d, where d is
#:                    weighted by the magnitude of the limit closer to zero.
#:                    The range midpoint is preserved.
#:  "proportional" -- each limit moves by its own magnitude-weighted share, so
#:                    the width scales exactly by C and the range collapses to
#:                    a single point at C = 0.
SCALING_MODES = ("symmetric", "proportional")

# Guards against draws that break the waveform model at extreme C: widths
# must stay positive and asymmetry exponents must not reach zero (a zero
# exponent erases the wave, negative ones diverge).  Both floors lie inside
# any scaled range that triggers them, so draws stay within their ranges.
MIN_WAVE_WIDTH = 1e-3
MIN_ASYMMETRY = 1e-2


def scale_range(low: float, high: float, c: float, mode: str = "symmetric") -> tuple[float, float]:
    """Scale a parameter range by coefficient ``c``.

    The pair is canonically ordered by magnitude (``l_low`` is the limit
    closer to zero); for negative ranges the scaling operates on magnitudes
    and the sign is reapplied, which permits inversion at large ``c``.
    Ranges with a zero lower limit keep it pinned at zero and only the upper
    limit moves (scaled to ``c * high``).  ``c = 1`` is the identity.

    Raises
    ------
    DegenerateRangeError
        If the limits are mixed-sign or sum to zero (undefined weighting).
    """
    if c < 0:
        raise ConfigError(f"scaling coefficient must be >= 0, got {c}")
    if mode not in SCALING_MODES:
        raise ConfigError(f"unknown scaling mode {mode!r}")
    if low == high:
        # Constants are never scaled.
        return (low, high)
    if low * high < 0:
        raise DegenerateRangeError(f"range limits must not straddle zero: ({low}, {high})")

    sign = -1.0 if (low < 0 or high < 0) else 1.0
    l_low, l_high = sorted((abs(low), abs(high)))
    total = l_low + l_high
    if total == 0.0:
        raise DegenerateRangeError(f"cannot weight-scale range ({low}, {high}): limits sum to zero")

    width = l_high - l_low
    if l_low == 0.0:
        # Fixed-zero lower limit: only the upper limit moves.
        lo, hi = 0.0, c * l_high
    elif mode == "symmetric":
        d = width * (c - 1.0) * l_low / total
        lo, hi = l_low - d, l_high + d
    else:  # proportional
        lo = l_low - width * (c - 1.0) * l_low / total
        # deriving hi from lo keeps the pair exactly ordered (and exactly
        # degenerate at c = 0) despite rounding
        hi = lo + c * width

    if sign < 0:
        return (-hi, -lo)
    return (lo, hi)


def _canonical(pair) -> tuple[float, float]:
    lo, hi = (float(pair), float(pair)) if np.isscalar(pair) else (float(pair[0]), float(pair[1]))
    return (lo, hi) if lo <= hi else (hi, lo)


@dataclass(frozen=True)
class WaveRanges:
    """Amplitude / width / delay / asymmetry ranges for one characteristic wave.

    Amplitude is dimensionless (r-normalized), width is in phase units, delay
    is seconds relative to the r apex (negative = earlier), asymmetry is the
    shape exponent applied to the positive-phase half of the wave.
    """

    amplitude: tuple[float, float]
    width: tuple[float, float]
    delay: tuple[float, float]
    asymmetry: tuple[float, float]

    def __post_init__(self):
        for name in ("amplitude", "width", "delay", "asymmetry"):
            object.__setattr__(self, name, _canonical(getattr(self, name)))


@dataclass(frozen=True)
class RrRanges:
    """Beat-interval model parameters: mean range plus breathing-modulation constants."""

    mu: tuple[float, float] = (0.75, 1.0)
    breathing_freq: float = 0.28
    breathing_coupling: float = 0.1
    gamma_sd: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mu", _canonical(self.mu))


@dataclass(frozen=True)
class NoiseRanges:
    """Spectral noise parameter ranges; lower limits are pinned at zero."""

    sigma: tuple[float, float] = (0.0, 0.17e-3)
    alpha: tuple[float, float] = (0.0, 0.67)
    rho: tuple[float, float] = (0.0, 4e-3)

    def __post_init__(self):
        for name in ("sigma", "alpha", "rho"):
            object.__setattr__(self, name, _canonical(getattr(self, name)))


@dataclass(frozen=True)
class ParameterSpace:
    """Full randomization space plus per-group scaling coefficients.

    Immutable; safe to share across parallel generation workers.  All
    sampling goes through `sample_draw` with a caller-provided seed.
    """

    waves: dict[str, WaveRanges] = field(default_factory=dict)
    rr: RrRanges = field(default_factory=RrRanges)
    noise: NoiseRanges = field(default_factory=NoiseRanges)
    scale_rr: float = 1.0
    scale_wave: float = 1.0
    scale_fiducial: float = 1.0
    scale_noise: float = 1.0
    scale_r_wave: bool = False
    scaling_mode: str = "symmetric"
    sampling_rate: float = 250.0

    def validate(self) -> None:
        if set(self.waves) != set(WAVE_NAMES):
            raise ConfigError(f"waves must define exactly {WAVE_NAMES}, got {sorted(self.waves)}")
        for c in (self.scale_rr, self.scale_wave, self.scale_fiducial, self.scale_noise):
            if not (c >= 0 and math.isfinite(c)):
                raise ConfigError(f"scaling coefficients must be finite and >= 0, got {c}")
        if self.scaling_mode not in SCALING_MODES:
            raise ConfigError(f"unknown scaling mode {self.scaling_mode!r}")
        if self.sampling_rate <= 0:
            raise ConfigError("sampling_rate must be > 0")
        if self.rr.mu[0] <= 0:
            raise ConfigError(f"mu must be > 0, got {self.rr.mu}")
        if self.rr.breathing_freq <= 0:
            raise ConfigError("breathing frequency must be > 0")
        if self.rr.gamma_sd < 0:
            raise ConfigError("gamma_sd must be >= 0")
        for name in ("sigma", "alpha", "rho"):
            lo, _ = getattr(self.noise, name)
            if lo != 0.0:
                raise ConfigError(f"noise {name} lower limit must be exactly 0, got {lo}")
        # Degenerate ranges are rejected here, at configuration time, so that
        # sampling never has to.
        for wave, wr in self.waves.items():
            for pname in ("amplitude", "width", "delay", "asymmetry"):
                self._check_scalable(f"{wave}.{pname}", getattr(wr, pname))
        self._check_scalable("rr.mu", self.rr.mu)

    def _check_scalable(self, label: str, pair: tuple[float, float]) -> None:
        lo, hi = pair
        if lo == hi:
            return
        if lo * hi < 0:
            raise DegenerateRangeError(f"{label}: limits must not straddle zero: {pair}")
        if abs(lo) + abs(hi) == 0.0:
            raise DegenerateRangeError(f"{label}: limits sum to zero: {pair}")

    def with_scale(self, c: float) -> "ParameterSpace":
        """Return a copy with all four group coefficients set to ``c``."""
        return replace(self, scale_rr=c, scale_wave=c, scale_fiducial=c, scale_noise=c)

    def scaled_ranges(self) -> dict[str, tuple[float, float]]:
        """Effective post-scaling range per ranged field, keyed like ``'p.amplitude'``."""
        out: dict[str, tuple[float, float]] = {}
        mode = self.scaling_mode
        for wave, wr in self.waves.items():
            c_shape = 1.0 if (wave == "r" and not self.scale_r_wave) else self.scale_wave
            out[f"{wave}.amplitude"] = scale_range(*wr.amplitude, c_shape, mode)
            out[f"{wave}.width"] = scale_range(*wr.width, c_shape, mode)
            out[f"{wave}.delay"] = scale_range(*wr.delay, self.scale_fiducial, mode)
            out[f"{wave}.asymmetry"] = scale_range(*wr.asymmetry, self.scale_wave, mode)
        out["rr.mu"] = scale_range(*self.rr.mu, self.scale_rr, mode)
        out["noise.sigma"] = scale_range(*self.noise.sigma, self.scale_noise, mode)
        out["noise.alpha"] = scale_range(*self.noise.alpha, self.scale_noise, mode)
        out["noise.rho"] = scale_range(*self.noise.rho, self.scale_noise, mode)
        return out

    def midpoint_draw(self) -> "ParameterDraw":
        """Deterministic draw at the midpoint of every scaled range."""
        ranges = self.scaled_ranges()
        mid = {k: 0.5 * (lo + hi) for k, (lo, hi) in ranges.items()}
        return self._assemble(mid, seed=None)

    def _assemble(self, values: dict[str, float], seed) -> "ParameterDraw":
        waves = {}
        for w in WAVE_NAMES:
            waves[w] = WaveParams(
                amplitude=values[f"{w}.amplitude"],
                width=max(values[f"{w}.width"], MIN_WAVE_WIDTH),
                delay=values[f"{w}.delay"],
                asymmetry=max(values[f"{w}.asymmetry"], MIN_ASYMMETRY),
            )
        alpha = values["noise.alpha"]
        return ParameterDraw(
            waves=waves,
            mu=values["rr.mu"],
            breathing_freq=self.rr.breathing_freq,
            breathing_coupling=self.rr.breathing_coupling,
            gamma_sd=self.rr.gamma_sd,
            sigma=values["noise.sigma"],
            alpha=alpha,
            # rho is attenuated by alpha^2 so near-white draws stay quiet.
            rho=values["noise.rho"] * alpha**2,
            seed=seed,
        )


@dataclass(frozen=True)
class WaveParams:
    """One sampled wave: concrete amplitude/width/delay/asymmetry values."""

    amplitude: float
    width: float
    delay: float
    asymmetry: float


@dataclass(frozen=True)
class ParameterDraw:
    """A concrete parameter sample; a pure function of (space, seed)."""

    waves: dict[str, WaveParams]
    mu: float
    breathing_freq: float
    breathing_coupling: float
    gamma_sd: float
    sigma: float
    alpha: float
    rho: float
    seed: object = None

    def to_json_dict(self) -> dict:
        return {
            "waves": {
                w: {
                    "a": wp.amplitude,
                    "b": wp.width,
                    "d": wp.delay,
                    "m": wp.asymmetry,
                }
                for w, wp in self.waves.items()
            },
            "rr": {
                "mu": self.mu,
                "f_b": self.breathing_freq,
                "beta": self.breathing_coupling,
                "gamma_sd": self.gamma_sd,
            },
            "noise": {"sigma": self.sigma, "alpha": self.alpha, "rho": self.rho},
            "seed": _seed_repr(self.seed),
        }


def _seed_repr(seed) -> object:
    if seed is None or isinstance(seed, int):
        return seed
    if isinstance(seed, np.integer):
        return int(seed)
    if isinstance(seed, np.random.SeedSequence):
        return {"entropy": seed.entropy, "spawn_key": list(seed.spawn_key)}
    return repr(seed)


def _ranged_fields(space: ParameterSpace) -> Iterator[tuple[str, tuple[float, float]]]:
    """Sampling order is fixed: waves p..t (a, b, d, m), then mu, then noise."""
    ranges = space.scaled_ranges()
    for w in WAVE_NAMES:
        for pname in ("amplitude", "width", "delay", "asymmetry"):
            yield f"{w}.{pname}", ranges[f"{w}.{pname}"]
    yield "rr.mu", ranges["rr.mu"]
    for pname in ("sigma", "alpha", "rho"):
        yield f"noise.{pname}", ranges[f"noise.{pname}"]


def sample_draw(space: ParameterSpace, seed) -> ParameterDraw:
    """Sample one concrete parameter set, uniformly and independently per field.

    Every ranged field, including degenerate constants, consumes exactly one
    uniform variate, so the draw is a pure function of ``(space, seed)``.
    """
    space.validate()
    rng = np.random.default_rng(seed)
    values = {}
    for name, (lo, hi) in _ranged_fields(space):
        values[name] = float(rng.uniform(lo, hi)) if lo != hi else lo
    return space._assemble(values, seed=seed)


def default_space() -> ParameterSpace:
    """Baseline ranges for the healthy-at-rest regime (C = 1)."""
    waves = {
        "p": WaveRanges(amplitude=(0.05, 0.2), width=(0.065, 0.085), delay=(-0.18, -0.12), asymmetry=1.0),
        "q": WaveRanges(amplitude=(-0.2, -0.05), width=(0.03, 0.08), delay=(-0.05, -0.03), asymmetry=1.0),
        "r": WaveRanges(amplitude=(0.8, 1.2), width=(0.06, 0.085), delay=0.0, asymmetry=1.0),
        "s": WaveRanges(amplitude=(-0.2, -0.05), width=(0.03, 0.08), delay=(0.03, 0.05), asymmetry=1.0),
        "t": WaveRanges(amplitude=(0.1, 0.6), width=(0.085, 0.21), delay=(0.2, 0.25), asymmetry=(1.0, 3.0)),
    }
    return ParameterSpace(waves=waves, rr=RrRanges(), noise=NoiseRanges())


# ---------------------------------------------------------------------------
# JSON (de)serialization; keys mirror the parameter table: a, b, d, m.

def _pair_to_json(pair: tuple[float, float]):
    lo, hi = pair
    return lo if lo == hi else [lo, hi]


def space_to_json_dict(space: ParameterSpace) -> dict:
    return {
        "format_version": 1,
        "sampling_rate": space.sampling_rate,
        "scaling_mode": space.scaling_mode,
        "scale": {
            "rr": space.scale_rr,
            "wave": space.scale_wave,
            "fiducial": space.scale_fiducial,
            "noise": space.scale_noise,
        },
        "scale_r_wave": space.scale_r_wave,
        "waves": {
            w: {
                "a": _pair_to_json(wr.amplitude),
                "b": _pair_to_json(wr.width),
                "d": _pair_to_json(wr.delay),
                "m": _pair_to_json(wr.asymmetry),
            }
            for w, wr in space.waves.items()
        },
        "rr": {
            "mu": _pair_to_json(space.rr.mu),
            "f_b": space.rr.breathing_freq,
            "beta": space.rr.breathing_coupling,
            "gamma_sd": space.rr.gamma_sd,
        },
        "noise": {
            "sigma": _pair_to_json(space.noise.sigma),
            "alpha": _pair_to_json(space.noise.alpha),
            "rho": _pair_to_json(space.noise.rho),
        },
    }


def space_from_json_dict(doc: dict) -> ParameterSpace:
    try:
        waves = {
            w: WaveRanges(
                amplitude=doc["waves"][w]["a"],
                width=doc["waves"][w]["b"],
                delay=doc["waves"][w]["d"],
                asymmetry=doc["waves"][w]["m"],
            )
            for w in doc.get("waves", {})
        }
        rr_doc = doc.get("rr", {})
        noise_doc = doc.get("noise", {})
        scale = doc.get("scale", {})
        space = ParameterSpace(
            waves=waves,
            rr=RrRanges(
                mu=rr_doc.get("mu", (0.75, 1.0)),
                breathing_freq=rr_doc.get("f_b", 0.28),
                breathing_coupling=rr_doc.get("beta", 0.1),
                gamma_sd=rr_doc.get("gamma_sd", 0.0),
            ),
            noise=NoiseRanges(
                sigma=noise_doc.get("sigma", (0.0, 0.17e-3)),
                alpha=noise_doc.get("alpha", (0.0, 0.67)),
                rho=noise_doc.get("rho", (0.0, 4e-3)),
            ),
            scale_rr=scale.get("rr", 1.0),
            scale_wave=scale.get("wave", 1.0),
            scale_fiducial=scale.get("fiducial", 1.0),
            scale_noise=scale.get("noise", 1.0),
            scale_r_wave=doc.get("scale_r_wave", False),
            scaling_mode=doc.get("scaling_mode", "symmetric"),
            sampling_rate=doc.get("sampling_rate", 250.0),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ConfigError(f"malformed parameter space document: {exc}") from exc
    space.validate()
    return space


def load_space(path) -> ParameterSpace:
    with open(path, "r", encoding="utf-8") as fh:
        return space_from_json_dict(json.load(fh))


def dump_space(space: ParameterSpace, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(space_to_json_dict(space), fh, indent=2)
        fh.write("\n")
