"""Seeded Monte-Carlo experiments: BER sweeps, SIR tables, loopback checks.

Every frame draws its information bits and channel noise from a child
generator keyed by (sweep point, frame index), so results are independent
of batching and scheduling, and two runs with the same configuration are
bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .channel import awgn_samples, snr_per_bit_to_sigma
from .config import SimulationConfig
from .metrics import CorrelationSequence, SirReport, autocorrelate, sir_db
from .modem import BasebandSignal, ModemConfig, SymbolGrid, demodulate, modulate
from .pulse import PULSE_KINDS, PulseSpec, sample_pulse
from .turbo import _decode_batch, turbo_encode

__all__ = [
    "BerPoint",
    "LoopbackResult",
    "theory_ber_uncoded",
    "run_ber_sweep",
    "run_sir_table",
    "run_loopback",
]

_DECODE_BATCH = 128
_MIN_NOISE_VAR = 1e-30  # LLR scale floor so a noiseless channel stays finite


@dataclass(frozen=True)
class BerPoint:
    """One sweep point; stopped_on records which stop rule fired."""

    snr_db: float
    bits: int
    errors: int
    ber: float
    theory_ber: float
    stopped_on: str


@dataclass(frozen=True)
class LoopbackResult:
    max_soft_deviation: float
    ber: float
    measured_sir_db: float
    predicted_sir_db: float
    peak_interference_bound: float


def theory_ber_uncoded(snr_db: float) -> float:
    """Gaussian-tail BER of the scalar channel x = S + z: Q(sqrt(2/var))."""
    variance = snr_per_bit_to_sigma(snr_db)
    if variance == 0.0:
        return 0.0
    return 0.5 * erfc(1.0 / math.sqrt(variance))


def _frame_rng(seed: int, point: int, frame: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(point, frame)))


def _transmit_frame(
    payload: np.ndarray,
    cfg: ModemConfig,
    variance: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Map a coded payload onto the grid, modulate, add noise, demodulate;
    returns soft symbols in payload order."""
    grid = SymbolGrid.from_bits(payload, cfg.subcarriers)
    tx = modulate(grid, cfg)
    noisy = tx.samples + awgn_samples(len(tx.samples), variance, rng)
    soft = demodulate(BasebandSignal(noisy, tx.sample_rate), cfg)
    return soft.T.reshape(-1)[: len(payload)]


def run_ber_sweep(cfg: SimulationConfig, uncoded: bool = False, progress=None):
    """Monte-Carlo BER at each configured SNR point.

    Coded mode runs the full chain (encode, map, modulate, AWGN,
    demodulate, LLR, decode); uncoded mode bypasses the code and makes
    hard decisions on the soft symbols.  Each point stops at
    min_bit_errors accumulated errors or at the frame budget.
    """
    modem_cfg = cfg.modem_config()
    turbo_cfg = cfg.turbo_config()
    payload_bits = cfg.coded_length
    points: list[BerPoint] = []
    for point_index, snr in enumerate(cfg.snr_db):
        variance = snr_per_bit_to_sigma(snr)
        llr_scale = 2.0 / max(variance / 2.0, _MIN_NOISE_VAR)
        errors = 0
        bits_done = 0
        frames_done = 0
        stopped_on = "frames"
        while frames_done < cfg.max_frames:
            batch = min(_DECODE_BATCH, cfg.max_frames - frames_done)
            frame_errors = np.empty(batch, dtype=np.int64)
            if uncoded:
                for j in range(batch):
                    rng = _frame_rng(cfg.seed, point_index, frames_done + j)
                    payload = rng.integers(0, 2, payload_bits, dtype=np.uint8)
                    soft = _transmit_frame(payload, modem_cfg, variance, rng)
                    frame_errors[j] = np.sum((soft < 0.0).astype(np.uint8) != payload)
                bits_per_frame = payload_bits
            else:
                infos = np.empty((batch, cfg.info_length), dtype=np.uint8)
                llrs = np.empty((batch, payload_bits))
                for j in range(batch):
                    rng = _frame_rng(cfg.seed, point_index, frames_done + j)
                    infos[j] = rng.integers(0, 2, cfg.info_length, dtype=np.uint8)
                    coded = turbo_encode(infos[j], turbo_cfg).coded_bits
                    soft = _transmit_frame(coded, modem_cfg, variance, rng)
                    llrs[j] = llr_scale * soft
                decoded = _decode_batch(llrs, turbo_cfg)
                frame_errors[:] = np.sum(decoded != infos, axis=1)
                bits_per_frame = cfg.info_length
            for j in range(batch):
                errors += int(frame_errors[j])
                bits_done += bits_per_frame
                frames_done += 1
                if errors >= cfg.min_bit_errors:
                    stopped_on = "errors"
                    break
            if stopped_on == "errors":
                break
        point = BerPoint(
            snr_db=snr,
            bits=bits_done,
            errors=errors,
            ber=errors / bits_done,
            theory_ber=theory_ber_uncoded(snr),
            stopped_on=stopped_on,
        )
        points.append(point)
        if progress is not None:
            progress(
                f"snr={snr:g} dB  ber={point.ber:.3e}  "
                f"errors={errors} bits={bits_done}  stop={stopped_on}"
            )
    return points


def run_sir_table(
    half_windows,
    symbol_period: float = 1.0,
    rolloff: float = 0.161,
    transition: float = 0.25,
    sample_rate: float = 5.0,
) -> list[SirReport]:
    """Symbol-lag SIR of every pulse kind at each window length."""
    reports = []
    for kind in PULSE_KINDS:
        for m in half_windows:
            spec = PulseSpec(
                symbol_period=symbol_period,
                rolloff=rolloff,
                transition=transition,
                sample_rate=sample_rate,
                half_window=int(m),
            )
            taps = sample_pulse(kind, spec)
            value = sir_db(autocorrelate(taps), spec.oversample)
            reports.append(SirReport(filter_kind=kind, half_window=int(m), sir_db=value))
    return reports


def combined_branch_correlation(cfg: ModemConfig) -> CorrelationSequence:
    """Autocorrelation seen by the real receive branch: the sum of the
    in-phase and quadrature tap autocorrelations (zero lag = gain)."""
    in_phase = autocorrelate(sample_pulse("rrc", cfg.pulse))
    quadrature = autocorrelate(sample_pulse(cfg.imag_kind, cfg.pulse))
    return CorrelationSequence(
        values=in_phase.values + quadrature.values,
        zero_lag_index=in_phase.zero_lag_index,
    )


def run_loopback(
    subcarriers: int = 5,
    window_multiple: int = 16,
    symbols_per_carrier: int = 10_000,
    seed: int = 0,
) -> LoopbackResult:
    """Noiseless end-to-end check on a random frame.

    Reports the hard-decision BER, the worst soft-symbol deviation, the
    measured symbol SIR, the tap-level prediction from the combined
    branch correlation, and the worst-case (sign-aligned) interference
    bound from the same correlation.
    """
    cfg = ModemConfig.create(subcarriers, window_multiple, symbols_per_carrier)
    rng = np.random.default_rng(seed)
    symbols = rng.choice([-1.0, 1.0], size=(subcarriers, symbols_per_carrier))
    grid = SymbolGrid(symbols)
    soft = demodulate(modulate(grid, cfg), cfg)
    deviation = soft - symbols
    ber = float(np.mean(np.sign(soft) != symbols))
    measured_sir = 10.0 * math.log10(1.0 / float(np.mean(deviation**2)))

    correlation = combined_branch_correlation(cfg)
    predicted_sir = sir_db(correlation, cfg.subcarriers)
    gain = correlation.values[correlation.zero_lag_index]
    lags = np.arange(
        cfg.subcarriers, correlation.max_lag + 1, cfg.subcarriers
    )
    taps_at_lags = correlation.values[correlation.zero_lag_index + lags]
    taps_at_neg = correlation.values[correlation.zero_lag_index - lags]
    peak_bound = float((np.abs(taps_at_lags).sum() + np.abs(taps_at_neg).sum()) / gain)
    return LoopbackResult(
        max_soft_deviation=float(np.max(np.abs(deviation))),
        ber=ber,
        measured_sir_db=measured_sir,
        predicted_sir_db=predicted_sir,
        peak_interference_bound=peak_bound,
    )
