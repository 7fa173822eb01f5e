"""Time-domain noise realizations from an analytic power-law-plus-white PSD.

The spectrum ``PSD(f) = rho / f**alpha + sigma**2`` is laid out on the FFT
frequency grid, each bin amplitude is multiplied by an independent unit
variance complex Gaussian, Hermitian symmetry is enforced, and the inverse
FFT's real part is the realization.  alpha = 1 gives flicker noise, alpha = 2
a random walk.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class NoiseSpec:
    """Analytic PSD parameters for one realization.

    ``sigma`` is the white-noise standard deviation: a pure-white spec yields
    time-domain variance sigma**2 in expectation (Parseval normalization).
    """

    rho: float
    alpha: float
    sigma: float
    n_samples: int
    sampling_rate: float = 250.0

    def validate(self) -> None:
        if self.rho < 0 or self.alpha < 0 or self.sigma < 0:
            raise ConfigError("noise parameters must be >= 0")
        if self.n_samples < 2:
            raise ConfigError(f"n_samples must be >= 2, got {self.n_samples}")
        if self.sampling_rate <= 0:
            raise ConfigError("sampling_rate must be > 0")


def analytic_psd(freqs: np.ndarray, rho: float, alpha: float, sigma: float) -> np.ndarray:
    """Evaluate the analytic PSD on a frequency grid; the DC bin is forced to 0."""
    psd = np.full(freqs.shape, sigma * sigma, dtype=float)
    nonzero = freqs != 0
    if rho > 0:
        psd[nonzero] += rho / np.abs(freqs[nonzero]) ** alpha
    psd[~nonzero] = 0.0
    return psd


def generate_noise(spec: NoiseSpec, seed) -> np.ndarray:
    """One noise realization; a pure function of ``(spec, seed)``.

    Normalization: bin amplitudes are ``sqrt(PSD * n**2 / (n - 1))`` so that
    white noise comes out with sample variance ``sigma**2`` in expectation
    (the DC bin carries nothing).
    """
    spec.validate()
    n = spec.n_samples
    freqs = np.fft.rfftfreq(n, d=1.0 / spec.sampling_rate)
    psd = analytic_psd(freqs, spec.rho, spec.alpha, spec.sigma)
    amplitude = np.sqrt(psd * (n * n / (n - 1.0)))

    rng = np.random.default_rng(seed)
    nbins = len(freqs)
    re = rng.standard_normal(nbins)
    im = rng.standard_normal(nbins)
    gauss = (re + 1j * im) / np.sqrt(2.0)
    gauss[0] = 0.0
    if n % 2 == 0:
        # Nyquist bin must be real to keep the spectrum Hermitian; a real
        # unit-variance Gaussian preserves the per-bin power convention.
        gauss[-1] = re[-1]

    spectrum = amplitude * gauss
    return np.fft.irfft(spectrum, n=n)


def empirical_psd(x: np.ndarray, sampling_rate: float) -> tuple[np.ndarray, np.ndarray]:
    """Periodogram in the same convention `generate_noise` uses.

    The expectation of the returned values over seeds equals `analytic_psd`
    on the same grid.
    """
    n = len(x)
    freqs = np.fft.rfftfreq(n, d=1.0 / sampling_rate)
    spectrum = np.fft.rfft(x)
    psd = np.abs(spectrum) ** 2 * ((n - 1.0) / (n * n))
    return freqs, psd


def loglog_slope(
    freqs: np.ndarray, psd: np.ndarray, f_min: float, f_max: float
) -> float:
    """Least-squares slope of log10(psd) against log10(f) over [f_min, f_max]."""
    band = (freqs >= f_min) & (freqs <= f_max) & (psd > 0)
    if band.sum() < 2:
        raise ConfigError("not enough spectral bins in the requested band")
    coeffs = np.polyfit(np.log10(freqs[band]), np.log10(psd[band]), 1)
    return float(coeffs[0])
