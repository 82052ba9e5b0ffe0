"""Correlation, interference, and spectrum measurements for sampled filters."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pulse import PulseSpec, SampledFilter

__all__ = [
    "CorrelationSequence",
    "SirReport",
    "SpectrumRecord",
    "PeriodogramRecord",
    "autocorrelate",
    "crosscorrelate",
    "sir_db",
    "dft_magnitude_db",
    "periodogram",
    "symbol_density",
]


@dataclass(frozen=True)
class CorrelationSequence:
    """Full linear correlation at lag spacing of one sample."""

    values: np.ndarray
    zero_lag_index: int

    def at_lag(self, lag: int) -> float:
        return float(self.values[self.zero_lag_index + lag])

    @property
    def max_lag(self) -> int:
        return len(self.values) - 1 - self.zero_lag_index


@dataclass(frozen=True)
class SirReport:
    """Signal-to-interference ratio of one filter at symbol-rate lags."""

    filter_kind: str
    half_window: int
    sir_db: float


@dataclass(frozen=True)
class SpectrumRecord:
    """Peak-normalized magnitude spectrum on the digital frequency axis."""

    omega_over_pi: np.ndarray
    magnitude_db: np.ndarray


@dataclass(frozen=True)
class PeriodogramRecord:
    """Segment-averaged power spectrum on the digital frequency axis."""

    omega_over_pi: np.ndarray
    power: np.ndarray


def autocorrelate(f: SampledFilter) -> CorrelationSequence:
    """Full linear autocorrelation of the taps; symmetric with the energy
    at zero lag."""
    taps = np.asarray(f.taps)
    if taps.size == 0:
        raise ValueError("empty filter")
    values = np.correlate(taps, taps, mode="full")
    return CorrelationSequence(values=values, zero_lag_index=len(taps) - 1)


def crosscorrelate(f: SampledFilter, g: SampledFilter) -> CorrelationSequence:
    """Full linear cross-correlation R_fg(k) = sum_m f[m+k] g[m]."""
    ft = np.asarray(f.taps)
    gt = np.asarray(g.taps)
    if len(ft) != len(gt):
        raise ValueError("filters must have equal length")
    values = np.correlate(ft, gt, mode="full")
    return CorrelationSequence(values=values, zero_lag_index=len(gt) - 1)


def sir_db(correlation: CorrelationSequence, oversample: int) -> float:
    """Ratio of squared zero-lag value to the sum of squared values at all
    nonzero whole-symbol lags inside the sequence, in dB.

    Returns math.inf when every symbol-lag value is exactly zero.
    """
    if oversample < 1:
        raise ValueError("oversample factor must be at least 1")
    r0 = correlation.values[correlation.zero_lag_index]
    if r0 == 0.0:
        raise ValueError("degenerate correlation")
    interference = 0.0
    lag = oversample
    while correlation.zero_lag_index + lag < len(correlation.values):
        interference += correlation.values[correlation.zero_lag_index + lag] ** 2
        interference += correlation.values[correlation.zero_lag_index - lag] ** 2
        lag += oversample
    if interference == 0.0:
        return math.inf
    return 10.0 * math.log10(r0 * r0 / interference)


def dft_magnitude_db(f: SampledFilter, n_fft: int) -> SpectrumRecord:
    """Zero-padded DFT magnitude, peak-normalized to 0 dB."""
    taps = np.asarray(f.taps)
    if n_fft < len(taps):
        raise ValueError("n_fft must be at least the filter length")
    spectrum = np.fft.fftshift(np.fft.fft(taps, n_fft))
    magnitude = np.abs(spectrum)
    peak = magnitude.max()
    if peak == 0.0:
        raise ValueError("zero filter has no spectrum peak")
    floored = np.maximum(magnitude, peak * 1e-20)
    omega = np.fft.fftshift(np.fft.fftfreq(n_fft)) * 2.0
    return SpectrumRecord(omega_over_pi=omega, magnitude_db=20.0 * np.log10(floored / peak))


def periodogram(samples, segment: int) -> PeriodogramRecord:
    """Average squared-magnitude DFT over consecutive non-overlapping
    segments of the given length."""
    x = np.asarray(samples)
    if segment < 1:
        raise ValueError("segment length must be positive")
    if segment > len(x):
        raise ValueError("segment longer than signal")
    n_segments = len(x) // segment
    blocks = x[: n_segments * segment].reshape(n_segments, segment)
    power = (np.abs(np.fft.fft(blocks, axis=1)) ** 2).mean(axis=0) / segment
    omega = np.fft.fftshift(np.fft.fftfreq(segment)) * 2.0
    return PeriodogramRecord(omega_over_pi=omega, power=np.fft.fftshift(power))


def symbol_density(spec: PulseSpec, analytic: bool) -> float:
    """Symbols per unit time-frequency area at the minimum aliasing-free
    subcarrier spacing: 2/(1+rolloff) with a one-sided (analytic) pulse,
    1/(1+rolloff) with the real pulse."""
    if analytic:
        return 2.0 / (1.0 + spec.rolloff)
    return 1.0 / (1.0 + spec.rolloff)
