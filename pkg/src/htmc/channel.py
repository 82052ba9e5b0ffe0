"""Complex AWGN injection and SNR bookkeeping.

The noise convention is per-component: add_awgn draws independent
zero-mean Gaussians of the configured variance onto the real and
imaginary parts, so half the mean squared complex magnitude equals that
variance.  The average SNR per information bit is 2/variance because each
BPSK symbol carries half a bit through the rate-1/2 code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .modem import BasebandSignal

__all__ = [
    "NoiseSpec",
    "awgn_samples",
    "add_awgn",
    "snr_per_bit_to_sigma",
    "sigma_to_snr_per_bit",
]


@dataclass(frozen=True)
class NoiseSpec:
    """Per-component noise variance and the seed of the generator."""

    variance: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.variance < 0.0:
            raise ValueError("noise variance must be non-negative")


def awgn_samples(n: int, variance: float, rng: np.random.Generator) -> np.ndarray:
    """Draw n complex noise samples with the given per-component variance."""
    if variance < 0.0:
        raise ValueError("noise variance must be non-negative")
    if variance == 0.0:
        return np.zeros(n, dtype=complex)
    scale = math.sqrt(variance)
    return rng.normal(0.0, scale, n) + 1j * rng.normal(0.0, scale, n)


def add_awgn(signal: BasebandSignal, noise: NoiseSpec) -> BasebandSignal:
    """Add seeded complex AWGN; identical spec gives an identical stream."""
    rng = np.random.default_rng(noise.seed)
    samples = signal.samples + awgn_samples(len(signal.samples), noise.variance, rng)
    return BasebandSignal(samples=samples, sample_rate=signal.sample_rate)


def snr_per_bit_to_sigma(snr_db: float) -> float:
    """Per-component noise variance for a given average SNR per bit in dB;
    +inf dB clamps to zero variance."""
    if math.isnan(snr_db):
        raise ValueError("snr_db must not be NaN")
    if math.isinf(snr_db):
        return 0.0 if snr_db > 0 else math.inf
    return 2.0 / 10.0 ** (snr_db / 10.0)


def sigma_to_snr_per_bit(variance: float) -> float:
    """Inverse of snr_per_bit_to_sigma."""
    if variance < 0.0:
        raise ValueError("noise variance must be non-negative")
    if variance == 0.0:
        return math.inf
    return 10.0 * math.log10(2.0 / variance)
