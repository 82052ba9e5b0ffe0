"""Tests for configuration parsing, sweeps, and report emission."""

import math
import os

import numpy as np
import pytest
from scipy.special import erfc

from htmc.config import ConfigError, SimulationConfig, parse_config
from htmc.report import (
    read_ber_csv,
    write_ber_csv,
    write_sir_csv,
    write_spectrum_csv,
    write_taps_csv,
)
from htmc.metrics import SirReport, dft_magnitude_db
from htmc.pulse import PulseSpec, sample_pulse
from htmc.sim import (
    BerPoint,
    run_ber_sweep,
    run_loopback,
    run_sir_table,
    theory_ber_uncoded,
)

FAST_UNCODED = dict(
    info_length=256,
    snr_db=(4.0,),
    max_frames=100,
    min_bit_errors=40,
    seed=7,
    window_multiple=8,
)


class TestConfigFile:
    """Flat key-value parsing."""

    def _write(self, tmp_path, text: str) -> str:
        path = tmp_path / "sim.cfg"
        path.write_text(text)
        return str(path)

    def test_round_trip(self, tmp_path) -> None:
        path = self._write(
            tmp_path,
            """
            # comment line
            symbol_period = 1.0
            rolloff = 0.161
            subcarriers = 5
            window_multiple = 8
            info_length = 128
            generators = 7,5
            iterations = 4
            snr_db = 0,1,2.5
            max_frames = 50
            min_bit_errors = 10
            seed = 9
            """,
        )
        cfg = parse_config(path)
        assert cfg.window_multiple == 8
        assert cfg.snr_db == (0.0, 1.0, 2.5)
        assert cfg.feedback == "7" and cfg.forward == "5"
        assert cfg.iterations == 4

    def test_unknown_key_rejected(self, tmp_path) -> None:
        path = self._write(tmp_path, "bandwidth = 5\n")
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(path)

    def test_repeated_key_rejected(self, tmp_path) -> None:
        path = self._write(tmp_path, "seed = 1\nseed = 2\n")
        with pytest.raises(ConfigError, match="repeated key"):
            parse_config(path)

    def test_bad_value_rejected(self, tmp_path) -> None:
        path = self._write(tmp_path, "max_frames = many\n")
        with pytest.raises(ConfigError, match="bad value"):
            parse_config(path)

    def test_component_invariants_checked(self) -> None:
        with pytest.raises(ConfigError, match="window_multiple"):
            SimulationConfig(window_multiple=7)
        with pytest.raises(ConfigError):
            SimulationConfig(snr_db=())
        with pytest.raises(ConfigError):
            SimulationConfig(rolloff=1.5)

    def test_defaults_follow_worked_parameters(self) -> None:
        cfg = SimulationConfig()
        assert cfg.subcarriers == 5
        assert cfg.info_length == 1024
        assert cfg.iterations == 8
        assert cfg.min_bit_errors == 100
        assert cfg.max_frames == 10_000


class TestTheory:
    def test_gaussian_tail_formula(self) -> None:
        for snr in (0.0, 2.0, 6.0):
            variance = 2.0 / 10.0 ** (snr / 10.0)
            expected = 0.5 * erfc(math.sqrt(2.0 / variance) / math.sqrt(2.0))
            assert theory_ber_uncoded(snr) == pytest.approx(expected, rel=1e-12)

    def test_noiseless_point(self) -> None:
        assert theory_ber_uncoded(math.inf) == 0.0


class TestBerSweep:
    """Monte-Carlo harness semantics."""

    def test_noiseless_point_is_error_free(self) -> None:
        cfg = SimulationConfig(
            info_length=128, snr_db=(math.inf,), max_frames=3, min_bit_errors=1, seed=1
        )
        (point,) = run_ber_sweep(cfg)
        assert point.errors == 0
        assert point.ber == 0.0
        assert point.stopped_on == "frames"

    def test_uncoded_matches_gaussian_tail(self) -> None:
        cfg = SimulationConfig(**FAST_UNCODED)
        (point,) = run_ber_sweep(cfg, uncoded=True)
        assert point.stopped_on == "errors"
        assert point.errors >= 40
        p = point.theory_ber
        margin = 3.0 * math.sqrt(p * (1.0 - p) / point.bits)
        assert abs(point.ber - p) <= margin

    def test_deterministic_under_seed(self) -> None:
        cfg = SimulationConfig(**FAST_UNCODED)
        first = run_ber_sweep(cfg, uncoded=True)
        second = run_ber_sweep(cfg, uncoded=True)
        assert first == second

    def test_coded_noisy_point_runs(self) -> None:
        cfg = SimulationConfig(
            info_length=128,
            snr_db=(3.0,),
            max_frames=40,
            min_bit_errors=5,
            seed=2,
            window_multiple=8,
            iterations=4,
        )
        (point,) = run_ber_sweep(cfg)
        assert point.bits % 128 == 0
        assert 0.0 <= point.ber <= 1.0
        assert point.stopped_on in ("errors", "frames")

    def test_frame_budget_stop(self) -> None:
        cfg = SimulationConfig(
            info_length=128,
            snr_db=(12.0,),
            max_frames=4,
            min_bit_errors=10_000,
            seed=3,
            window_multiple=8,
            iterations=1,
        )
        (point,) = run_ber_sweep(cfg, uncoded=True)
        assert point.stopped_on == "frames"
        assert point.bits == 4 * 256


class TestSirTable:
    def test_rows_and_determinism(self) -> None:
        first = run_sir_table([25, 50])
        second = run_sir_table([25, 50])
        assert first == second
        assert len(first) == 6
        kinds = {r.filter_kind for r in first}
        assert kinds == {"rrc", "ht", "mht"}

    def test_expected_orderings(self) -> None:
        table = {(r.filter_kind, r.half_window): r.sir_db for r in run_sir_table([100])}
        assert table[("mht", 100)] > table[("rrc", 100)] - 10.0
        assert table[("ht", 100)] < table[("rrc", 100)] - 10.0


class TestLoopbackRun:
    def test_consistency_report(self) -> None:
        result = run_loopback(symbols_per_carrier=1500, seed=4)
        assert result.ber == 0.0
        assert abs(result.measured_sir_db - result.predicted_sir_db) <= 1.0
        assert result.max_soft_deviation <= result.peak_interference_bound * 10 ** (1 / 20)


class TestReports:
    """CSV schemas, atomicity of content, round trips."""

    def test_ber_csv_round_trip(self, tmp_path) -> None:
        points = [
            BerPoint(2.0, 1000, 37, 0.037, 0.0375, "errors"),
            BerPoint(4.0, 5000, 12, 0.0024, 0.0125, "frames"),
        ]
        path = str(tmp_path / "ber.csv")
        write_ber_csv(points, path)
        loaded = read_ber_csv(path)
        assert [(p.snr_db, p.bits, p.errors) for p in loaded] == [
            (2.0, 1000, 37),
            (4.0, 5000, 12),
        ]
        np.testing.assert_allclose([p.ber for p in loaded], [0.037, 0.0024])

    def test_empty_points_header_only(self, tmp_path) -> None:
        path = str(tmp_path / "ber.csv")
        write_ber_csv([], path)
        assert open(path).read() == "snr_db,bits,errors,ber,theory_ber\n"

    def test_theory_column_matches_oracle(self, tmp_path) -> None:
        cfg = SimulationConfig(**FAST_UNCODED)
        points = run_ber_sweep(cfg, uncoded=True)
        path = str(tmp_path / "ber.csv")
        write_ber_csv(points, path)
        for row in read_ber_csv(path):
            variance = 2.0 / 10.0 ** (row.snr_db / 10.0)
            oracle = 0.5 * erfc(math.sqrt(2.0 / variance) / math.sqrt(2.0))
            assert row.theory_ber == pytest.approx(oracle, rel=1e-8)

    def test_sir_csv_infinite_sentinel(self, tmp_path) -> None:
        path = str(tmp_path / "sir.csv")
        write_sir_csv([SirReport("rrc", 1, math.inf)], path)
        lines = open(path).read().splitlines()
        assert lines == ["filter,M,sir_db", "rrc,1,inf"]

    def test_taps_csv_schema(self, tmp_path) -> None:
        path = str(tmp_path / "taps.csv")
        filt = sample_pulse("rrc", PulseSpec(half_window=4))
        write_taps_csv(filt, path)
        lines = open(path).read().splitlines()
        assert lines[0] == "m,t,real,imag"
        assert len(lines) == 1 + 9
        first = lines[1].split(",")
        assert first[0] == "-4"
        assert float(first[3]) == 0.0

    def test_spectrum_csv_schema(self, tmp_path) -> None:
        path = str(tmp_path / "spec.csv")
        record = dft_magnitude_db(sample_pulse("rrc", PulseSpec(half_window=8)), 64)
        write_spectrum_csv(record, path)
        lines = open(path).read().splitlines()
        assert lines[0] == "omega_over_pi,magnitude_db"
        values = np.array([line.split(",") for line in lines[1:]], dtype=float)
        assert values[:, 1].max() == pytest.approx(0.0, abs=1e-12)

    def test_unwritable_path_raises(self, tmp_path) -> None:
        with pytest.raises(OSError):
            write_ber_csv([], str(tmp_path / "missing-dir" / "ber.csv"))
