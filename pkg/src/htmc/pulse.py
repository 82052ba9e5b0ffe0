"""Closed-form pulse shapes for single-sideband multicarrier filtering.

The in-phase pulse has a root-raised-cosine (RRC) spectrum.  Two quadrature
partners are provided: the exact Hilbert transform of that pulse, and a
modified transform whose frequency response replaces the hard sign flip at
DC with a unit-magnitude phase ramp across ``|F| <= a*F1``.  The ramp
removes the 1/t time-domain tail that truncation otherwise turns into
residual intersymbol interference.

Every evaluator is a closed form with an explicit series fallback at each
removable singularity, so outputs are finite for all inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PulseSpec",
    "SampledFilter",
    "rrc_spectrum",
    "rrc_pulse",
    "hilbert_rrc",
    "mod_hilbert_response",
    "mod_hilbert_rrc",
    "sample_pulse",
    "analytic_taps",
    "PULSE_KINDS",
]

# Switch to the series expansion this close to a removable 0/0 (natural
# units: t is compared against the symbol period, the pole test is on the
# dimensionless factor 1 - (8*B*rho*t)**2).
_SINGULARITY_TOL = 1e-8


@dataclass(frozen=True)
class PulseSpec:
    """Continuous-time pulse parameters plus the sampling window.

    symbol_period   symbol interval in seconds
    rolloff         excess-bandwidth fraction, 0 < rolloff <= 1
    transition      phase-ramp half-width of the modified transform as a
                    fraction of the flat band edge, 0 < transition <= 1
    sample_rate     sampling rate in Hz; sample_rate * symbol_period must
                    be a positive integer so symbols land on the grid
    half_window     one-sided tap count M; filters span 2*M + 1 taps
    """

    symbol_period: float = 1.0
    rolloff: float = 0.161
    transition: float = 0.25
    sample_rate: float = 5.0
    half_window: int = 100

    def __post_init__(self) -> None:
        if self.symbol_period <= 0.0:
            raise ValueError("symbol_period must be positive")
        if not 0.0 < self.rolloff <= 1.0:
            raise ValueError("rolloff must satisfy 0 < rolloff <= 1")
        if not 0.0 < self.transition <= 1.0:
            raise ValueError("transition must satisfy 0 < transition <= 1")
        if self.sample_rate <= 0.0:
            raise ValueError("sample_rate must be positive")
        per_symbol = self.sample_rate * self.symbol_period
        if abs(per_symbol - round(per_symbol)) > 1e-9 or round(per_symbol) < 1:
            raise ValueError("sample_rate * symbol_period must be a positive integer")
        if self.half_window < 1:
            raise ValueError("half_window must be at least 1")

    @property
    def half_band(self) -> float:
        """Half the symbol rate; the RRC flat level is 1/sqrt(2*half_band)."""
        return 0.5 / self.symbol_period

    @property
    def flat_edge(self) -> float:
        """Upper edge of the flat portion of the spectrum."""
        return self.half_band * (1.0 - self.rolloff)

    @property
    def band_edge(self) -> float:
        """Frequency where the spectrum reaches zero."""
        return self.half_band * (1.0 + self.rolloff)

    @property
    def sample_period(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def oversample(self) -> int:
        """Samples per symbol."""
        return int(round(self.sample_rate * self.symbol_period))


@dataclass(frozen=True)
class SampledFilter:
    """Filter taps on the grid t = (m + offset) * sample_period, |m| <= M."""

    taps: np.ndarray
    sample_period: float
    offset: float
    energy_normalized: bool

    def __len__(self) -> int:
        return len(self.taps)

    @property
    def half_window(self) -> int:
        return (len(self.taps) - 1) // 2

    @property
    def indices(self) -> np.ndarray:
        m = self.half_window
        return np.arange(-m, m + 1)

    @property
    def times(self) -> np.ndarray:
        return (self.indices + self.offset) * self.sample_period


def _evaluate(fn, t, spec: PulseSpec):
    """Apply an array evaluator to scalar or array time input."""
    arr = np.asarray(t, dtype=float)
    flat = fn(np.atleast_1d(arr).ravel(), spec)
    if arr.ndim == 0:
        return flat[0].item()
    return flat.reshape(arr.shape)


def rrc_spectrum(freq, spec: PulseSpec):
    """Amplitude spectrum of the in-phase pulse.

    Flat at 1/sqrt(2B) up to the flat edge, cosine taper out to the band
    edge, zero beyond; continuous at both edges.
    """
    return _evaluate(_rrc_spectrum_array, freq, spec)


def _rrc_spectrum_array(freq: np.ndarray, spec: PulseSpec) -> np.ndarray:
    b = spec.half_band
    amp = 1.0 / math.sqrt(2.0 * b)
    f1 = spec.flat_edge
    f2 = spec.band_edge
    af = np.abs(freq)
    out = np.zeros_like(af)
    out[af <= f1] = amp
    taper = (af > f1) & (af <= f2)
    out[taper] = amp * np.cos(math.pi * (af[taper] - f1) / (4.0 * b * spec.rolloff))
    return out


def rrc_pulse(t, spec: PulseSpec):
    """Time-domain pulse with the RRC spectrum (even, unit spectral energy).

    Removable 0/0 points at t = 0 and t = +-1/(8*B*rho) are evaluated by a
    second-order series around the limit instead of the raw quotient.
    """
    return _evaluate(_rrc_pulse_array, t, spec)


def _rrc_pulse_array(t: np.ndarray, spec: PulseSpec) -> np.ndarray:
    b = spec.half_band
    rho = spec.rolloff
    amp = 1.0 / math.sqrt(2.0 * b)
    c1 = 2.0 * math.pi * b * (1.0 - rho)
    c2 = 8.0 * b * rho
    c3 = 2.0 * math.pi * b * (1.0 + rho)
    q = c2 * c2

    near_zero = np.abs(t) < _SINGULARITY_TOL * spec.symbol_period
    near_pole = np.abs(1.0 - (c2 * t) ** 2) < _SINGULARITY_TOL
    safe = ~(near_zero | near_pole)

    out = np.empty_like(t)
    ts = t[safe]
    num = np.sin(c1 * ts) + c2 * ts * np.cos(c3 * ts)
    out[safe] = amp * num / (math.pi * ts * (1.0 - (c2 * ts) ** 2))

    if near_zero.any():
        ts = t[near_zero]
        # numerator expanded to third order; denominator kept exact
        num = (c1 + c2) - (c1**3 / 6.0 + 0.5 * c2 * c3 * c3) * ts * ts
        out[near_zero] = amp * num / (math.pi * (1.0 - q * ts * ts))
    if near_pole.any():
        ts = t[near_pole]
        t0 = np.sign(ts) / c2
        eps = ts - t0
        s1, k1 = np.sin(c1 * t0), np.cos(c1 * t0)
        s3, k3 = np.sin(c3 * t0), np.cos(c3 * t0)
        n1 = c1 * k1 + c2 * k3 - c2 * c3 * t0 * s3
        n2 = -c1 * c1 * s1 - 2.0 * c2 * c3 * s3 - c2 * c3 * c3 * t0 * k3
        n3 = -c1**3 * k1 - 3.0 * c2 * c3 * c3 * k3 + c2 * c3**3 * t0 * s3
        d1 = math.pi * (1.0 - 3.0 * q * t0 * t0) / amp
        d2 = -6.0 * math.pi * q * t0 / amp
        d3 = -6.0 * math.pi * q / amp
        out[near_pole] = (n1 + eps * (0.5 * n2 + eps * n3 / 6.0)) / (
            d1 + eps * (0.5 * d2 + eps * d3 / 6.0)
        )
    return out


def _flat_band_component(t: np.ndarray, spec: PulseSpec) -> np.ndarray:
    """Quadrature contribution of the flat portion of the spectrum.

    Equal to [1 - cos(2*pi*F1*t)] / (pi*t*sqrt(2B)), written via sin**2 to
    avoid cancellation; odd in t with limit 0 at t = 0.
    """
    b = spec.half_band
    amp = 1.0 / math.sqrt(2.0 * b)
    f1 = spec.flat_edge
    near_zero = np.abs(t) < _SINGULARITY_TOL * spec.symbol_period

    out = np.empty_like(t)
    ts = t[~near_zero]
    out[~near_zero] = amp * 2.0 * np.sin(math.pi * f1 * ts) ** 2 / (math.pi * ts)
    if near_zero.any():
        ts = t[near_zero]
        x2 = (math.pi * f1 * ts) ** 2
        out[near_zero] = amp * 2.0 * math.pi * f1 * f1 * ts * (1.0 - x2 / 3.0)
    return out


def _taper_component(t: np.ndarray, spec: PulseSpec) -> np.ndarray:
    """Quadrature contribution of the cosine-taper band (shared by both
    quadrature pulses); removable 0/0 at t = +-1/(8*B*rho)."""
    b = spec.half_band
    rho = spec.rolloff
    amp = 1.0 / math.sqrt(2.0 * b)
    c1 = 2.0 * math.pi * b * (1.0 - rho)
    c2 = 8.0 * b * rho
    c3 = 2.0 * math.pi * b * (1.0 + rho)
    q = c2 * c2

    near_pole = np.abs(1.0 - (c2 * t) ** 2) < _SINGULARITY_TOL
    safe = ~near_pole

    out = np.empty_like(t)
    ts = t[safe]
    num = c2 * np.sin(c3 * ts) - q * ts * np.cos(c1 * ts)
    out[safe] = amp * num / (math.pi * (1.0 - q * ts * ts))

    if near_pole.any():
        ts = t[near_pole]
        t0 = np.sign(ts) / c2
        eps = ts - t0
        s1, k1 = np.sin(c1 * t0), np.cos(c1 * t0)
        s3, k3 = np.sin(c3 * t0), np.cos(c3 * t0)
        n1 = c2 * c3 * k3 - q * k1 + q * c1 * t0 * s1
        n2 = -c2 * c3 * c3 * s3 + 2.0 * q * c1 * s1 + q * c1 * c1 * t0 * k1
        n3 = -c2 * c3**3 * k3 + 3.0 * q * c1 * c1 * k1 - q * c1**3 * t0 * s1
        d1 = -2.0 * math.pi * q * t0 / amp
        d2 = -2.0 * math.pi * q / amp
        out[near_pole] = (n1 + eps * (0.5 * n2 + eps * n3 / 6.0)) / (d1 + 0.5 * eps * d2)
    return out


def hilbert_rrc(t, spec: PulseSpec):
    """Exact Hilbert transform of the RRC pulse (odd, finite everywhere)."""
    return _evaluate(_hilbert_rrc_array, t, spec)


def _hilbert_rrc_array(t: np.ndarray, spec: PulseSpec) -> np.ndarray:
    return _flat_band_component(t, spec) + _taper_component(t, spec)


def mod_hilbert_response(freq, spec: PulseSpec):
    """Frequency response of the modified quadrature transform.

    Unit magnitude everywhere: -j above the ramp, +j below it, and a linear
    phase ramp through -1 at DC across |F| <= transition * flat_edge.
    Conjugate-symmetric, continuous at the ramp edges.
    """
    arr = np.asarray(freq, dtype=float)
    flat = _mod_hilbert_response_array(np.atleast_1d(arr).ravel(), spec)
    if arr.ndim == 0:
        return complex(flat[0])
    return flat.reshape(arr.shape)


def _mod_hilbert_response_array(freq: np.ndarray, spec: PulseSpec) -> np.ndarray:
    ramp_edge = spec.transition * spec.flat_edge
    out = np.empty(freq.shape, dtype=complex)
    if ramp_edge == 0.0:
        # degenerate ramp width (rolloff 1); keep the midpoint value at DC
        out[freq > 0.0] = -1j
        out[freq < 0.0] = 1j
        out[freq == 0.0] = -1.0
        return out
    out[freq >= ramp_edge] = -1j
    out[freq <= -ramp_edge] = 1j
    inside = np.abs(freq) < ramp_edge
    fi = freq[inside]
    out[inside] = np.exp(
        1j * (math.pi * (fi + ramp_edge) / (2.0 * ramp_edge) + 0.5 * math.pi)
    )
    return out


def mod_hilbert_rrc(t, spec: PulseSpec):
    """Modified quadrature transform of the RRC pulse.

    Sum of the phase-ramp band, the remaining flat band, and the taper band;
    real-valued and finite everywhere (sinc limits cover the ramp terms).
    """
    return _evaluate(_mod_hilbert_rrc_array, t, spec)


def _mod_hilbert_rrc_array(t: np.ndarray, spec: PulseSpec) -> np.ndarray:
    b = spec.half_band
    amp = 1.0 / math.sqrt(2.0 * b)
    f1 = spec.flat_edge
    a = spec.transition
    af1 = a * f1
    # ramp band: the sinc argument is af1*(2t + 1/(2*af1)) = 2*af1*t + 1/2,
    # formed directly so rolloff -> 1 (af1 -> 0) stays finite
    ramp = -2.0 * af1 * amp * np.sinc(2.0 * af1 * t + 0.5)
    flat = (
        2.0
        * f1
        * (1.0 + a)
        * amp
        * np.sinc(f1 * (1.0 + a) * t)
        * np.sin(math.pi * f1 * (1.0 - a) * t)
    )
    return ramp + flat + _taper_component(t, spec)


PULSE_KINDS = ("rrc", "ht", "mht")

_KIND_EVALUATORS = {
    "rrc": _rrc_pulse_array,
    "ht": _hilbert_rrc_array,
    "mht": _mod_hilbert_rrc_array,
}


def sample_pulse(kind: str, spec: PulseSpec, offset: float = -0.5) -> SampledFilter:
    """Sample a closed-form pulse on t = (m + offset)*Ts for |m| <= M and
    scale to unit energy.

    The default half-sample shift matches the transmit grid; pass offset=0
    for the symmetric grid where the even/odd identities are exact.
    """
    try:
        evaluator = _KIND_EVALUATORS[kind]
    except KeyError:
        raise ValueError(f"unknown pulse kind {kind!r}; expected one of {PULSE_KINDS}")
    m = np.arange(-spec.half_window, spec.half_window + 1)
    t = (m + offset) * spec.sample_period
    taps = evaluator(t.astype(float), spec)
    energy = float(np.dot(taps, taps))
    if energy <= 0.0:
        raise ValueError("zero-energy filter")
    return SampledFilter(
        taps=taps / math.sqrt(energy),
        sample_period=spec.sample_period,
        offset=offset,
        energy_normalized=True,
    )


def analytic_taps(spec: PulseSpec, imag_kind: str = "mht", offset: float = -0.5) -> np.ndarray:
    """Complex transmit taps: unit-energy in-phase pulse plus j times the
    unit-energy quadrature pulse ("mht" or "ht")."""
    if imag_kind not in ("ht", "mht"):
        raise ValueError("imag_kind must be 'ht' or 'mht'")
    real_part = sample_pulse("rrc", spec, offset).taps
    imag_part = sample_pulse(imag_kind, spec, offset).taps
    return real_part + 1j * imag_part
