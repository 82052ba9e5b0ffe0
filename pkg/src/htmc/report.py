"""CSV emission (atomic) and the matplotlib figures rendered alongside."""

from __future__ import annotations

import math
import os
import tempfile

import numpy as np

from .metrics import SirReport, SpectrumRecord
from .pulse import SampledFilter
from .sim import BerPoint

__all__ = [
    "write_taps_csv",
    "write_spectrum_csv",
    "write_sir_csv",
    "write_ber_csv",
    "read_ber_csv",
    "figure_path",
    "plot_taps",
    "plot_spectrum",
    "plot_sir",
    "plot_ber",
]


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    handle = tempfile.NamedTemporaryFile(
        "w", dir=directory, prefix=".tmp-", suffix=".csv", delete=False, encoding="utf-8"
    )
    try:
        handle.write(text)
        handle.flush()
        os.fsync(handle.fileno())
        handle.close()
        os.replace(handle.name, path)
    except BaseException:
        handle.close()
        if os.path.exists(handle.name):
            os.unlink(handle.name)
        raise


def write_taps_csv(filt: SampledFilter, path: str) -> None:
    """Tap export: m, t, real, imag (imag zero for real filters)."""
    lines = ["m,t,real,imag"]
    taps = np.asarray(filt.taps)
    for m, t, value in zip(filt.indices, filt.times, taps):
        c = complex(value)
        lines.append(f"{m},{t:.17g},{c.real:.17g},{c.imag:.17g}")
    _atomic_write(path, "\n".join(lines) + "\n")


def write_spectrum_csv(record: SpectrumRecord, path: str) -> None:
    """Spectrum export: omega_over_pi, magnitude_db (peak at 0 dB)."""
    lines = ["omega_over_pi,magnitude_db"]
    for w, db in zip(record.omega_over_pi, record.magnitude_db):
        lines.append(f"{w:.17g},{db:.17g}")
    _atomic_write(path, "\n".join(lines) + "\n")


def write_sir_csv(reports: list[SirReport], path: str) -> None:
    """SIR table: filter, M, sir_db; an exact-zero interference sum prints inf."""
    lines = ["filter,M,sir_db"]
    for report in reports:
        value = "inf" if math.isinf(report.sir_db) else f"{report.sir_db:.6f}"
        lines.append(f"{report.filter_kind},{report.half_window},{value}")
    _atomic_write(path, "\n".join(lines) + "\n")


def write_ber_csv(points: list[BerPoint], path: str) -> None:
    """BER sweep: snr_db, bits, errors, ber, theory_ber."""
    lines = ["snr_db,bits,errors,ber,theory_ber"]
    for p in points:
        lines.append(
            f"{p.snr_db:g},{p.bits},{p.errors},{p.ber:.9e},{p.theory_ber:.9e}"
        )
    _atomic_write(path, "\n".join(lines) + "\n")


def read_ber_csv(path: str) -> list[BerPoint]:
    """Parse a file produced by write_ber_csv (stop flags are not stored)."""
    points = []
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().strip()
        if header != "snr_db,bits,errors,ber,theory_ber":
            raise ValueError(f"unexpected BER CSV header: {header!r}")
        for line in handle:
            snr, bits, errors, ber, theory = line.strip().split(",")
            points.append(
                BerPoint(
                    snr_db=float(snr),
                    bits=int(bits),
                    errors=int(errors),
                    ber=float(ber),
                    theory_ber=float(theory),
                    stopped_on="",
                )
            )
    return points


def figure_path(csv_path: str) -> str:
    return os.path.splitext(csv_path)[0] + ".png"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_taps(filt: SampledFilter, path: str, title: str = "filter taps") -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    taps = np.asarray(filt.taps)
    ax.plot(filt.times, taps.real, lw=1.0, label="real")
    if np.iscomplexobj(taps):
        ax.plot(filt.times, taps.imag, lw=1.0, label="imag")
    ax.set_xlabel("t (s)")
    ax.set_ylabel("amplitude")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_spectrum(record: SpectrumRecord, path: str, title: str = "magnitude response") -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(record.omega_over_pi, record.magnitude_db, lw=0.8)
    ax.set_xlabel(r"$\omega/\pi$")
    ax.set_ylabel("magnitude (dB)")
    ax.set_ylim(bottom=max(-120.0, float(np.min(record.magnitude_db))))
    ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sir(reports: list[SirReport], path: str) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    kinds = sorted({r.filter_kind for r in reports})
    for kind in kinds:
        rows = sorted(
            (r for r in reports if r.filter_kind == kind), key=lambda r: r.half_window
        )
        ax.plot(
            [r.half_window for r in rows],
            [r.sir_db for r in rows],
            marker="o",
            label=kind,
        )
    ax.set_xlabel("one-sided window length M")
    ax.set_ylabel("SIR (dB)")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_ber(points: list[BerPoint], path: str, coded: bool = True) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    snr = [p.snr_db for p in points]
    measured = [p.ber for p in points]
    theory = [p.theory_ber for p in points]
    label = "measured (coded)" if coded else "measured (uncoded)"
    ax.semilogy(snr, measured, marker="o", label=label)
    ax.semilogy(snr, theory, ls="--", label="uncoded theory")
    ax.set_xlabel("average SNR per bit (dB)")
    ax.set_ylabel("BER")
    ax.grid(alpha=0.3, which="both")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
