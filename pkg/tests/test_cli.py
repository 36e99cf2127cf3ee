import json
import math
import subprocess
import sys

import numpy as np
import pytest

from nmrjj import PhaseSpacePoint, TimeGrid, integrate
from nmrjj.bifurcation import SweepRow
from nmrjj.cli import main
from nmrjj.config import UsageError, parse_config
from nmrjj.io import read_table, sha256, write_series, write_sweep
from nmrjj.quantum import ZSeries


class TestParseConfig:
    def test_paper_lambda_list(self):
        cfg = parse_config(["sweep", "--lambda-list", "0.67,0.81,1.08,1.35,1.62,2.70"])
        assert cfg.mode == "sweep"
        assert cfg.lambda_list == [0.67, 0.81, 1.08, 1.35, 1.62, 2.70]

    def test_reproduce_defaults(self):
        cfg = parse_config(["reproduce-paper"])
        assert cfg.spin_two_I == 7
        assert cfg.phi == math.pi and cfg.theta == math.pi / 4
        assert cfg.n_points == 45 and cfg.bin_width == 0.05

    @pytest.mark.parametrize(
        "args",
        [
            ["quantum", "--spin", "0", "--lambda", "1"],
            ["quantum"],
            ["quantum", "--lambda", "1", "--theta", "4"],
            ["quantum", "--lambda", "1", "--phi", "6.3"],
            ["quantum", "--lambda", "1", "--n-points", "1"],
            ["quantum", "--lambda", "1", "--delta-s", "0"],
            ["quantum", "--lambda", "1", "--bin-width", "-0.1"],
            ["quantum", "--lambda", "1", "--t-pi", "25e-6", "--nu-q", "7700"],
            ["quantum", "--t-pi", "25e-6"],
            ["classical", "--lambda", "1", "--theta", "0"],
            ["fixed-points", "--lambda", "-1"],
            ["sweep", "--lambda-list", "1,-2"],
            ["sweep", "--lambda-list", "a,b"],
            ["bogus"],
            ["quantum", "--lambda", "1", "--format", "xml"],
        ],
    )
    def test_usage_errors(self, args):
        with pytest.raises(UsageError):
            parse_config(args)

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"lambda": 2.0, "n_points": 10, "out": "x"}))
        cfg = parse_config(["quantum", "--config", str(path), "--n-points", "20"])
        assert cfg.lam == 2.0 and cfg.n_points == 20 and cfg.output_path == "x"

    def test_unknown_file_key(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"lambda": 2.0, "colour": "red"}))
        with pytest.raises(UsageError, match="colour"):
            parse_config(["quantum", "--config", str(path)])

    def test_nested_file_value_rejected(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"lambda": {"a": 1}}))
        with pytest.raises(UsageError):
            parse_config(["quantum", "--config", str(path)])

    def test_physical_inputs(self):
        cfg = parse_config(["quantum", "--t-pi", "25e-6", "--nu-q", "7700"])
        assert cfg.delta_s_from_t_pi
        cfg = parse_config(["quantum", "--t-pi", "25e-6", "--nu-q", "7700", "--delta-s", "0.2"])
        assert not cfg.delta_s_from_t_pi


def test_usage_exit_code(capsys):
    assert main(["quantum", "--spin", "0", "--lambda", "1"]) == 2
    assert "spin" in capsys.readouterr().err


def test_io_exit_code(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["quantum", "--lambda", "1", "--out", str(blocker / "sub")]) == 3


def test_numeric_exit_code(tmp_path):
    # start next to the pole and let the flow push it over
    out = tmp_path / "pole"
    code = main(["classical", "--lambda", "0", "--theta", "1e-3", "--phi", "4.71238898",
                 "--delta-s", "0.01", "--n-points", "50", "--out", str(out)])
    assert code == 4
    manifest = json.loads((out / "manifest.json").read_text())
    assert "PoleError" in manifest["failure"]
    assert "classical_trajectory_partial.csv" in manifest["files"]


def test_python_module_entry(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "nmrjj", "fixed-points", "--lambda", "2", "--out", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    table = read_table(tmp_path / "fixed_points.csv")
    assert table["label"] == ["P0", "Ppi", "Pplus", "Pminus"]
    assert table["stability"][1] == "saddle_unstable"


class TestWriters:
    def test_trivial_series_line_count(self, tmp_path):
        s = np.arange(3) * 0.1
        path = write_series(ZSeries(s, np.cos(s)), tmp_path / "q")
        text = path.read_text()
        assert text.count("\n") == 4 and "\r" not in text
        assert text.splitlines()[0] == "s,z"

    def test_full_precision(self, tmp_path):
        z = np.array([1 / 3, -2 / 7])
        path = write_series(ZSeries(np.array([0.0, 0.1]), z), tmp_path / "q")
        back = read_table(path)
        assert back["z"] == list(z)
        assert "0.33333333333333331" in path.read_text()

    def test_classical_constant_run(self, tmp_path):
        traj = integrate(PhaseSpacePoint(0, 0), 1.5, TimeGrid(0.1, 5))
        table = read_table(write_series(traj, tmp_path / "c"))
        assert list(table) == ["s", "z", "zeta", "energy"]
        assert table["z"] == [0.0] * 5
        assert table["energy"] == [-1.0] * 5

    def test_json_round_trip(self, tmp_path):
        traj = integrate(PhaseSpacePoint(0.4, 2.0), 2.7, TimeGrid(0.37, 30))
        table = read_table(write_series(traj, tmp_path / "c", "json"))
        for key in ("s", "z", "zeta", "energy"):
            assert table[key] == list(getattr(traj, key))

    def test_sweep_rows_sorted(self, tmp_path):
        rows = [
            SweepRow(2.70, "south", -0.7, 0.1, -0.8, -0.9288841632581076),
            SweepRow(0.5, "north", 0.01, 0.3, 0.02, 0.0),
            SweepRow(2.70, "north", 0.7, 0.1, 0.8, 0.9288841632581076),
        ]
        table = read_table(write_sweep(rows, tmp_path / "sweep"))
        assert list(table) == ["lambda", "hemisphere", "z_mean_quantum", "z_std_quantum",
                               "z_mean_classical", "z0_theory"]
        assert table["lambda"] == [0.5, 2.70, 2.70]
        assert table["hemisphere"] == ["north", "north", "south"]
        assert table["z0_theory"][0] == 0
        assert table["z0_theory"][1] == pytest.approx(0.9289, abs=5e-5)

    def test_empty_sweep(self, tmp_path):
        with pytest.raises(ValueError):
            write_sweep([], tmp_path / "s")


def test_sweep_is_byte_identical(tmp_path):
    args = ["sweep", "--lambda-list", "0.67,1.35,2.70", "--n-points", "20"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    for name in ("sweep.csv", "bifurcation_curve.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    manifest = json.loads((tmp_path / "a" / "manifest.json").read_text())
    assert manifest["files"]["sweep.csv"] == sha256(tmp_path / "a" / "sweep.csv")


def test_quantum_and_classical_modes(tmp_path):
    assert main(["quantum", "--t-pi", "100e-6", "--nu-q", "7700", "--out", str(tmp_path / "q"), "--format", "json"]) == 0
    manifest = json.loads((tmp_path / "q" / "manifest.json").read_text())
    assert manifest["lambda_convention"] == "paper"
    assert manifest["lambda_from_physical"] == pytest.approx(2.695)
    assert manifest["delta_s_used"] == pytest.approx(math.pi / 10)
    series = read_table(tmp_path / "q" / "quantum_series.json")
    assert len(series["z"]) == 45
    hist = read_table(tmp_path / "q" / "quantum_histogram.json")
    assert sum(hist["count"]) == 45

    assert main(["classical", "--lambda", "2.7", "--out", str(tmp_path / "c")]) == 0
    assert len(read_table(tmp_path / "c" / "classical_trajectory.csv")["z"]) == 45


def test_reproduce_paper(tmp_path, capsys):
    assert main(["reproduce-paper", "--out", str(tmp_path)]) == 0
    series = sorted((tmp_path / "series").glob("*.csv"))
    assert len(series) == 12
    assert all(len(read_table(p)["z"]) == 45 for p in series)
    assert len(list((tmp_path / "histograms").glob("*.csv"))) == 12
    assert len(read_table(tmp_path / "sweep.csv")["lambda"]) == 12
    report = (tmp_path / "acceptance_report.txt").read_text()
    assert all(f"] {n}. " in report for n in range(1, 10))
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert set(manifest["results"]["acceptance"]) == {str(n) for n in range(1, 10)}
    assert "series/quantum_L2.70_south.csv" in manifest["files"]
    assert "[PASS]" in capsys.readouterr().out
