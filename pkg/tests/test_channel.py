"""Tests for AWGN injection and SNR bookkeeping."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from htmc.channel import (
    NoiseSpec,
    add_awgn,
    awgn_samples,
    sigma_to_snr_per_bit,
    snr_per_bit_to_sigma,
)
from htmc.modem import BasebandSignal

RNG_SEED_VARIANCE = 11
RNG_SEED_NORMALITY = 12


class TestNoiseSpec:
    def test_negative_variance_rejected(self) -> None:
        with pytest.raises(ValueError, match="non-negative"):
            NoiseSpec(variance=-0.1)


class TestAddAwgn:
    """Noise statistics and determinism."""

    def test_zero_variance_is_identity(self) -> None:
        signal = BasebandSignal(np.arange(10, dtype=complex), 5.0)
        out = add_awgn(signal, NoiseSpec(variance=0.0, seed=1))
        np.testing.assert_array_equal(out.samples, signal.samples)

    def test_per_component_variance(self) -> None:
        rng = np.random.default_rng(RNG_SEED_VARIANCE)
        noise = awgn_samples(1_000_000, 1.0, rng)
        assert noise.real.var() == pytest.approx(1.0, rel=5e-3)
        assert noise.imag.var() == pytest.approx(1.0, rel=5e-3)

    def test_components_uncorrelated(self) -> None:
        rng = np.random.default_rng(RNG_SEED_VARIANCE)
        n = 1_000_000
        noise = awgn_samples(n, 1.0, rng)
        correlation = float(np.mean(noise.real * noise.imag))
        assert abs(correlation) < 3.0 / math.sqrt(n)

    def test_seed_determinism(self) -> None:
        signal = BasebandSignal(np.zeros(4096, dtype=complex), 5.0)
        spec = NoiseSpec(variance=0.7, seed=42)
        first = add_awgn(signal, spec).samples
        second = add_awgn(signal, spec).samples
        np.testing.assert_array_equal(first, second)

    def test_gaussianity(self) -> None:
        # draws must pass an Anderson-Darling normality check at n = 1e5
        rng = np.random.default_rng(RNG_SEED_NORMALITY)
        noise = awgn_samples(100_000, 2.0, rng)
        for component in (noise.real, noise.imag):
            result = stats.anderson(component, dist="norm")
            threshold = result.critical_values[list(result.significance_level).index(1.0)]
            assert result.statistic < threshold


class TestSnrConversion:
    """Average SNR per bit maps to per-component variance as 2/variance."""

    def test_ratio_two(self) -> None:
        assert snr_per_bit_to_sigma(10.0 * math.log10(2.0)) == pytest.approx(1.0)

    def test_zero_db(self) -> None:
        assert snr_per_bit_to_sigma(0.0) == pytest.approx(2.0)

    def test_infinite_snr_clamps(self) -> None:
        assert snr_per_bit_to_sigma(math.inf) == 0.0
        assert sigma_to_snr_per_bit(0.0) == math.inf

    def test_nan_rejected(self) -> None:
        with pytest.raises(ValueError):
            snr_per_bit_to_sigma(math.nan)

    @settings(max_examples=100, deadline=None)
    @given(snr_db=st.floats(min_value=-40.0, max_value=40.0, allow_nan=False))
    def test_round_trip(self, snr_db: float) -> None:
        assert sigma_to_snr_per_bit(snr_per_bit_to_sigma(snr_db)) == pytest.approx(
            snr_db, abs=1e-12
        )
