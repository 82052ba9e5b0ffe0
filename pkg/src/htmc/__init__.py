"""Discrete-time simulator for a single-sideband multicarrier modem.

Analytic pulse shaping (RRC plus exact or modified quadrature transform),
N-subcarrier transmit and matched-filter receive over complex AWGN, a
rate-1/2 iteratively decoded code, and seeded Monte-Carlo BER and SIR
measurement with CSV/figure reports.
"""

from .channel import NoiseSpec, add_awgn, sigma_to_snr_per_bit, snr_per_bit_to_sigma
from .config import ConfigError, SimulationConfig, parse_config
from .metrics import (
    CorrelationSequence,
    PeriodogramRecord,
    SirReport,
    SpectrumRecord,
    autocorrelate,
    crosscorrelate,
    dft_magnitude_db,
    periodogram,
    sir_db,
    symbol_density,
)
from .modem import (
    BasebandSignal,
    ModemConfig,
    SymbolGrid,
    bits_to_symbols,
    demodulate,
    modulate,
    symbol_sampling_offset,
)
from .pulse import (
    PULSE_KINDS,
    PulseSpec,
    SampledFilter,
    analytic_taps,
    hilbert_rrc,
    mod_hilbert_response,
    mod_hilbert_rrc,
    rrc_pulse,
    rrc_spectrum,
    sample_pulse,
)
from .sim import (
    BerPoint,
    LoopbackResult,
    run_ber_sweep,
    run_loopback,
    run_sir_table,
    theory_ber_uncoded,
)
from .turbo import CodedFrame, TurboConfig, make_interleaver, turbo_decode, turbo_encode

__version__ = "0.1.0"

__all__ = [
    "BasebandSignal",
    "BerPoint",
    "CodedFrame",
    "ConfigError",
    "CorrelationSequence",
    "LoopbackResult",
    "ModemConfig",
    "NoiseSpec",
    "PULSE_KINDS",
    "PeriodogramRecord",
    "PulseSpec",
    "SampledFilter",
    "SimulationConfig",
    "SirReport",
    "SpectrumRecord",
    "SymbolGrid",
    "TurboConfig",
    "add_awgn",
    "analytic_taps",
    "autocorrelate",
    "bits_to_symbols",
    "crosscorrelate",
    "demodulate",
    "dft_magnitude_db",
    "hilbert_rrc",
    "make_interleaver",
    "mod_hilbert_response",
    "mod_hilbert_rrc",
    "modulate",
    "parse_config",
    "periodogram",
    "rrc_pulse",
    "rrc_spectrum",
    "run_ber_sweep",
    "run_loopback",
    "run_sir_table",
    "sample_pulse",
    "sigma_to_snr_per_bit",
    "sir_db",
    "snr_per_bit_to_sigma",
    "symbol_density",
    "symbol_sampling_offset",
    "theory_ber_uncoded",
    "turbo_decode",
    "turbo_encode",
]
