"""Tests for the command line interface and its exit codes."""

import os

import numpy as np
import pytest

import htmc.cli as cli
from htmc.report import read_ber_csv


def _write_config(tmp_path, text: str) -> str:
    path = tmp_path / "sim.cfg"
    path.write_text(text)
    return str(path)


FAST_CFG = """
info_length = 128
window_multiple = 8
iterations = 2
snr_db = 3.0,5.0
max_frames = 30
min_bit_errors = 10
seed = 11
"""


class TestPulseCommand:
    def test_writes_taps_and_figure(self, tmp_path) -> None:
        out = str(tmp_path / "taps.csv")
        spectrum = str(tmp_path / "spec.csv")
        code = cli.main(
            ["pulse", "--kind", "mht", "--out", out, "--spectrum-out", spectrum, "--M", "50"]
        )
        assert code == 0
        assert os.path.exists(out)
        assert os.path.exists(str(tmp_path / "taps.png"))
        assert os.path.exists(spectrum)
        assert os.path.exists(str(tmp_path / "spec.png"))
        header = open(out).readline().strip()
        assert header == "m,t,real,imag"

    def test_bad_kind_is_config_error(self, tmp_path) -> None:
        code = cli.main(["pulse", "--kind", "nope", "--out", str(tmp_path / "x.csv")])
        assert code == 1


class TestSirCommand:
    def test_writes_table(self, tmp_path) -> None:
        out = str(tmp_path / "sir.csv")
        code = cli.main(["sir", "--M", "25,50", "--out", out])
        assert code == 0
        lines = open(out).read().splitlines()
        assert lines[0] == "filter,M,sir_db"
        assert len(lines) == 7
        assert os.path.exists(str(tmp_path / "sir.png"))


class TestLoopbackCommand:
    def test_clean_loopback_exits_zero(self, capsys) -> None:
        code = cli.main(["loopback", "--w", "8", "--symbols", "400"])
        assert code == 0
        out = capsys.readouterr().out
        assert "hard-decision BER" in out
        assert "max soft-symbol deviation" in out

    def test_nonzero_ber_exits_two(self, monkeypatch) -> None:
        from htmc.sim import LoopbackResult

        def broken(**kwargs):
            return LoopbackResult(0.5, 0.01, 10.0, 40.0, 0.1)

        monkeypatch.setattr(cli, "run_loopback", lambda **kw: broken())
        assert cli.main(["loopback", "--w", "8", "--symbols", "100"]) == 2


class TestBerCommand:
    def test_uncoded_sweep_writes_csv_and_figure(self, tmp_path) -> None:
        cfg = _write_config(tmp_path, FAST_CFG)
        out = str(tmp_path / "ber.csv")
        code = cli.main(["ber", "--config", cfg, "--out", out, "--uncoded"])
        assert code == 0
        points = read_ber_csv(out)
        assert [p.snr_db for p in points] == [3.0, 5.0]
        assert os.path.exists(str(tmp_path / "ber.png"))

    def test_repeat_runs_byte_identical(self, tmp_path) -> None:
        cfg = _write_config(tmp_path, FAST_CFG)
        out1 = str(tmp_path / "a.csv")
        out2 = str(tmp_path / "b.csv")
        assert cli.main(["ber", "--config", cfg, "--out", out1, "--uncoded"]) == 0
        assert cli.main(["ber", "--config", cfg, "--out", out2, "--uncoded"]) == 0
        assert open(out1, "rb").read() == open(out2, "rb").read()

    def test_bad_config_exits_one(self, tmp_path) -> None:
        cfg = _write_config(tmp_path, "unknown_knob = 3\n")
        assert cli.main(["ber", "--config", cfg, "--out", str(tmp_path / "x.csv")]) == 1

    def test_missing_output_path_exits_one(self, tmp_path) -> None:
        cfg = _write_config(tmp_path, FAST_CFG)
        assert cli.main(["ber", "--config", cfg]) == 1

    def test_out_key_in_config_used(self, tmp_path) -> None:
        out = str(tmp_path / "fromcfg.csv")
        cfg = _write_config(tmp_path, FAST_CFG + f"out = {out}\n")
        assert cli.main(["ber", "--config", cfg, "--uncoded"]) == 0
        assert os.path.exists(out)


class TestArgumentErrors:
    def test_unknown_subcommand(self) -> None:
        assert cli.main(["frobnicate"]) == 1

    def test_help_exits_zero(self) -> None:
        assert cli.main(["--help"]) == 0
