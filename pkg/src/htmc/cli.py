"""Command line front end.

Subcommands: pulse (tap/spectrum export), sir (interference table),
loopback (noiseless end-to-end check), ber (Monte-Carlo sweep).  Every
CSV output gets a rendered .png figure next to it.

Exit codes: 0 success, 1 configuration error, 2 loopback acceptance
failure (nonzero bit errors).
"""

from __future__ import annotations

import argparse
import sys

from . import report
from .config import ConfigError, parse_config
from .metrics import dft_magnitude_db
from .pulse import PULSE_KINDS, PulseSpec, sample_pulse
from .sim import run_ber_sweep, run_loopback, run_sir_table

__all__ = ["main"]


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="htmc",
        description="Single-sideband multicarrier modem simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_pulse = sub.add_parser("pulse", help="export sampled filter taps")
    p_pulse.add_argument("--kind", choices=PULSE_KINDS, required=True)
    p_pulse.add_argument("--out", required=True, help="taps CSV path")
    p_pulse.add_argument("--spectrum-out", help="optional magnitude-response CSV path")
    p_pulse.add_argument("--T", type=float, default=1.0, dest="symbol_period")
    p_pulse.add_argument("--rho", type=float, default=0.161, dest="rolloff")
    p_pulse.add_argument("--a", type=float, default=0.25, dest="transition")
    p_pulse.add_argument("--fs", type=float, default=5.0, dest="sample_rate")
    p_pulse.add_argument("--M", type=int, default=100, dest="half_window")
    p_pulse.add_argument("--n-fft", type=int, default=4096)
    p_pulse.set_defaults(func=_cmd_pulse)

    p_sir = sub.add_parser("sir", help="symbol-lag SIR table over window lengths")
    p_sir.add_argument("--M", type=_int_list, default=[25, 50, 100], dest="half_windows")
    p_sir.add_argument("--out", required=True, help="SIR CSV path")
    p_sir.add_argument("--T", type=float, default=1.0, dest="symbol_period")
    p_sir.add_argument("--rho", type=float, default=0.161, dest="rolloff")
    p_sir.add_argument("--a", type=float, default=0.25, dest="transition")
    p_sir.add_argument("--fs", type=float, default=5.0, dest="sample_rate")
    p_sir.set_defaults(func=_cmd_sir)

    p_loop = sub.add_parser("loopback", help="noiseless end-to-end frame check")
    p_loop.add_argument("--w", type=int, default=16, dest="window_multiple")
    p_loop.add_argument("--N", type=int, default=5, dest="subcarriers")
    p_loop.add_argument("--symbols", type=int, default=10_000)
    p_loop.add_argument("--seed", type=int, default=0)
    p_loop.set_defaults(func=_cmd_loopback)

    p_ber = sub.add_parser("ber", help="Monte-Carlo BER sweep")
    p_ber.add_argument("--config", required=True, help="key-value config file")
    p_ber.add_argument("--out", help="BER CSV path (overrides config 'out')")
    p_ber.add_argument("--uncoded", action="store_true", help="bypass the turbo code")
    p_ber.set_defaults(func=_cmd_ber)
    return parser


def _cmd_pulse(args: argparse.Namespace) -> int:
    spec = PulseSpec(
        symbol_period=args.symbol_period,
        rolloff=args.rolloff,
        transition=args.transition,
        sample_rate=args.sample_rate,
        half_window=args.half_window,
    )
    filt = sample_pulse(args.kind, spec)
    report.write_taps_csv(filt, args.out)
    report.plot_taps(filt, report.figure_path(args.out), title=f"{args.kind} taps")
    print(f"wrote {args.out} and {report.figure_path(args.out)}")
    if args.spectrum_out:
        record = dft_magnitude_db(filt, args.n_fft)
        report.write_spectrum_csv(record, args.spectrum_out)
        report.plot_spectrum(
            record,
            report.figure_path(args.spectrum_out),
            title=f"{args.kind} magnitude response",
        )
        print(f"wrote {args.spectrum_out} and {report.figure_path(args.spectrum_out)}")
    return 0


def _cmd_sir(args: argparse.Namespace) -> int:
    reports = run_sir_table(
        args.half_windows,
        symbol_period=args.symbol_period,
        rolloff=args.rolloff,
        transition=args.transition,
        sample_rate=args.sample_rate,
    )
    report.write_sir_csv(reports, args.out)
    report.plot_sir(reports, report.figure_path(args.out))
    for row in reports:
        print(f"{row.filter_kind:4s} M={row.half_window:<4d} SIR={row.sir_db:.2f} dB")
    print(f"wrote {args.out} and {report.figure_path(args.out)}")
    return 0


def _cmd_loopback(args: argparse.Namespace) -> int:
    result = run_loopback(
        subcarriers=args.subcarriers,
        window_multiple=args.window_multiple,
        symbols_per_carrier=args.symbols,
        seed=args.seed,
    )
    print(f"max soft-symbol deviation: {result.max_soft_deviation:.6e}")
    print(f"hard-decision BER:         {result.ber:.6e}")
    print(f"measured symbol SIR:       {result.measured_sir_db:.2f} dB")
    print(f"tap-level predicted SIR:   {result.predicted_sir_db:.2f} dB")
    if result.ber > 0.0:
        print("loopback FAILED: nonzero bit errors", file=sys.stderr)
        return 2
    return 0


def _cmd_ber(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    out = args.out or cfg.out
    if not out:
        raise ConfigError("no output path: pass --out or set 'out' in the config")
    points = run_ber_sweep(cfg, uncoded=args.uncoded, progress=lambda s: print(s, file=sys.stderr))
    report.write_ber_csv(points, out)
    report.plot_ber(points, report.figure_path(out), coded=not args.uncoded)
    print(f"wrote {out} and {report.figure_path(out)}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
