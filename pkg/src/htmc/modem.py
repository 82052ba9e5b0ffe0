"""Multicarrier transmitter and matched-filter receiver.

Each subcarrier carries real BPSK symbols shaped by the complex analytic
taps (in-phase RRC pulse plus j times its modified quadrature transform).
Subcarrier i is shifted to digital frequency 2*pi*i/N; the receiver mixes
each subcarrier back to baseband, applies the conjugate time-reversed
taps, samples at the symbol instants, and keeps the real part scaled by
the inverse zero-lag correlation so a noiseless symbol returns as itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .pulse import PulseSpec, analytic_taps

__all__ = [
    "ModemConfig",
    "SymbolGrid",
    "BasebandSignal",
    "bits_to_symbols",
    "modulate",
    "demodulate",
    "symbol_sampling_offset",
    "transmit_taps",
    "matched_filter_gain",
]


def bits_to_symbols(bits) -> np.ndarray:
    """Map bits to BPSK amplitudes: 0 -> +1, 1 -> -1."""
    b = np.asarray(bits)
    return 1.0 - 2.0 * b.astype(float)


class SymbolGrid:
    """Real +-1 symbols indexed by (subcarrier, symbol slot).

    Complex entries are rejected: with an analytic transmit pulse the
    in-phase and quadrature matched-filter branches are summed at the
    receiver, so quadrature data would land on top of the crosstalk term.
    """

    def __init__(self, symbols) -> None:
        arr = np.asarray(symbols)
        if np.iscomplexobj(arr):
            raise TypeError("symbols must be real-valued")
        if arr.ndim != 2:
            raise ValueError("symbol grid must be 2-D (subcarriers x slots)")
        values = arr.astype(float)
        if not np.all(np.abs(values) == 1.0):
            raise ValueError("symbol entries must be +1 or -1")
        self.symbols = values

    @property
    def shape(self) -> tuple[int, int]:
        return self.symbols.shape

    @classmethod
    def from_bits(cls, bits, subcarriers: int) -> "SymbolGrid":
        """Round-robin demultiplex a bit stream over the subcarriers,
        padding the last slot column with +1 filler."""
        symbols = bits_to_symbols(bits)
        slots = -(-len(symbols) // subcarriers) * subcarriers
        padded = np.concatenate([symbols, np.ones(slots - len(symbols))])
        return cls(padded.reshape(-1, subcarriers).T)


@dataclass(frozen=True)
class BasebandSignal:
    """Complex baseband samples at the configured sampling rate."""

    samples: np.ndarray
    sample_rate: float

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class ModemConfig:
    """Frame geometry: N subcarriers at spacing 2*pi/N, filters spanning an
    integer multiple of N samples per side."""

    pulse: PulseSpec
    subcarriers: int
    window_multiple: int
    symbols_per_carrier: int
    imag_kind: str = "mht"

    def __post_init__(self) -> None:
        if self.subcarriers < 1:
            raise ValueError("need at least one subcarrier")
        if self.window_multiple < 1:
            raise ValueError("window_multiple must be at least 1")
        if self.symbols_per_carrier < 1:
            raise ValueError("need at least one symbol per carrier")
        if self.pulse.oversample != self.subcarriers:
            raise ValueError("pulse oversample factor must equal the subcarrier count")
        if self.pulse.half_window != self.window_multiple * self.subcarriers:
            raise ValueError("filter half-window must be window_multiple * subcarriers")
        if self.imag_kind not in ("ht", "mht"):
            raise ValueError("imag_kind must be 'ht' or 'mht'")

    @classmethod
    def create(
        cls,
        subcarriers: int,
        window_multiple: int,
        symbols_per_carrier: int,
        symbol_period: float = 1.0,
        rolloff: float = 0.161,
        transition: float = 0.25,
        imag_kind: str = "mht",
    ) -> "ModemConfig":
        pulse = PulseSpec(
            symbol_period=symbol_period,
            rolloff=rolloff,
            transition=transition,
            sample_rate=subcarriers / symbol_period,
            half_window=window_multiple * subcarriers,
        )
        return cls(
            pulse=pulse,
            subcarriers=subcarriers,
            window_multiple=window_multiple,
            symbols_per_carrier=symbols_per_carrier,
            imag_kind=imag_kind,
        )

    @property
    def carrier_freqs(self) -> np.ndarray:
        """Digital subcarrier frequencies in radians per sample."""
        return 2.0 * np.pi * np.arange(self.subcarriers) / self.subcarriers

    @property
    def signal_length(self) -> int:
        """Transmit signal length: symbol span plus the filter transient,
        (K-1)*I + 1 + 2*M samples."""
        return (
            (self.symbols_per_carrier - 1) * self.subcarriers
            + 1
            + 2 * self.pulse.half_window
        )


def transmit_taps(cfg: ModemConfig) -> np.ndarray:
    """Complex per-subcarrier taps with unit-energy real and imaginary parts."""
    return analytic_taps(cfg.pulse, imag_kind=cfg.imag_kind)


def matched_filter_gain(cfg: ModemConfig) -> float:
    """Zero-lag value of the transmit/receive cascade, computed from the
    truncated taps rather than assumed; equals 2 up to round-off when both
    parts are unit energy."""
    taps = transmit_taps(cfg)
    return float(np.sum(np.abs(taps) ** 2))


def symbol_sampling_offset(cfg: ModemConfig) -> int:
    """Sample index of the first symbol's matched-filter peak.

    The transmit-plus-receive cascade is the tap autocorrelation, whose
    peak sits at lag zero, i.e. at output index len(taps) - 1 = 2*M for a
    symbol placed at upsampled index 0.
    """
    return 2 * cfg.pulse.half_window


def modulate(grid: SymbolGrid, cfg: ModemConfig) -> BasebandSignal:
    """Upsample each subcarrier's symbols, filter with the analytic taps,
    shift to the subcarrier frequency, and sum."""
    if grid.shape != (cfg.subcarriers, cfg.symbols_per_carrier):
        raise ValueError(
            f"grid shape {grid.shape} does not match config "
            f"({cfg.subcarriers}, {cfg.symbols_per_carrier})"
        )
    samples = _modulate_symbols(grid.symbols, cfg)
    return BasebandSignal(samples=samples, sample_rate=cfg.pulse.sample_rate)


def _modulate_symbols(symbols: np.ndarray, cfg: ModemConfig) -> np.ndarray:
    """Transmit chain on a raw (subcarriers, slots) array; symbols may be
    complex here so tests can demonstrate the quadrature crosstalk."""
    taps = transmit_taps(cfg)
    n, k = symbols.shape
    step = cfg.subcarriers
    up = np.zeros((n, (k - 1) * step + 1), dtype=complex)
    up[:, ::step] = symbols
    shaped = fftconvolve(up, taps[None, :], mode="full", axes=1)
    m = np.arange(shaped.shape[1])
    carriers = np.exp(1j * np.outer(cfg.carrier_freqs, m))
    return (shaped * carriers).sum(axis=0)


def demodulate(signal: BasebandSignal, cfg: ModemConfig) -> np.ndarray:
    """Matched-filter receive chain returning real soft symbols x[i, k]
    with unit gain: x = S + noise for a noiseless-channel input."""
    return _demodulate_soft(signal, cfg).real


def _demodulate_soft(signal: BasebandSignal, cfg: ModemConfig) -> np.ndarray:
    """Complex matched-filter outputs before the real-part extraction."""
    x = np.asarray(signal.samples)
    expected = cfg.signal_length
    if len(x) < expected:
        raise ValueError(f"signal too short: {len(x)} samples, expected {expected}")
    if len(x) != expected:
        raise ValueError(f"signal length {len(x)} inconsistent with config ({expected})")
    taps = transmit_taps(cfg)
    matched = np.conj(taps[::-1])
    m = np.arange(len(x))
    mixed = x[None, :] * np.exp(-1j * np.outer(cfg.carrier_freqs, m))
    filtered = fftconvolve(mixed, matched[None, :], mode="full", axes=1)
    offset = symbol_sampling_offset(cfg)
    step = cfg.subcarriers
    picks = filtered[:, offset :: step][:, : cfg.symbols_per_carrier]
    return picks / matched_filter_gain(cfg)
