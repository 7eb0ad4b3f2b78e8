"""Tests for the command-line interface: schemas, exit codes, reproducibility."""

import json
import math
import os

import numpy as np
import pytest

from noma_fusion.cli import main

CASE1 = ["--eps1", "0.05", "--eps2", "0.1", "--p1", "2", "--p2", "1"]


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestDesign:
    def test_case1_zero_db(self, capsys):
        rc, out, _ = run(capsys, ["design", *CASE1, "--snr-db", "0"])
        assert rc == 0
        payload = json.loads(out)
        assert payload["schema_version"] == 1
        assert payload["theta_star_rad"] == pytest.approx(0.784, abs=1e-3)
        assert payload["clamped"] is False

    def test_case2_clamped(self, capsys):
        rc, out, _ = run(
            capsys,
            ["design", "--eps1", "0.01", "--eps2", "0.02", "--p1", "1", "--p2", "2", "--snr-db", "-10"],
        )
        assert rc == 0
        payload = json.loads(out)
        assert payload["theta_star_rad"] == 0.0
        assert payload["clamped"] is True

    def test_invalid_crossovers_exit_two(self, capsys):
        rc, _, err = run(capsys, ["design", "--eps1", "0.1", "--eps2", "0.05", "--p1", "1", "--p2", "1", "--n0", "1"])
        assert rc == 2
        assert "eps1" in err

    def test_degrees_flag_adds_display_field(self, capsys):
        rc, out, _ = run(capsys, ["design", *CASE1, "--snr-db", "0", "--degrees"])
        payload = json.loads(out)
        assert payload["theta_star_deg"] == pytest.approx(math.degrees(payload["theta_star_rad"]))


class TestTable1:
    def test_default_bound_columns(self, capsys):
        rc, out, _ = run(capsys, ["table1"])
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "snr_db,case,theta_ub_star,theta_exp_star"
        assert len(lines) == 21
        rows = [line.split(",") for line in lines[1:]]
        assert all(r[3] == "" for r in rows)

    def test_empty_snr_list_exit_two(self, capsys):
        rc, _, err = run(capsys, ["table1", "--snr-list", "  "])
        assert rc == 2
        assert "empty" in err

    def test_config_file_cases(self, capsys, tmp_path):
        cfg = tmp_path / "cases.ini"
        cfg.write_text("[table]\nsnr_db = 0 3\n\n[mycase]\neps1 = 0.05\neps2 = 0.1\np1 = 2\np2 = 1\n")
        rc, out, _ = run(capsys, ["table1", "--config", str(cfg)])
        assert rc == 0
        lines = out.splitlines()
        assert len(lines) == 3
        assert lines[1].split(",")[1] == "mycase"
        assert float(lines[1].split(",")[2]) == pytest.approx(0.7837, abs=1e-3)

    def test_missing_config_exit_two(self, capsys, tmp_path):
        rc, _, err = run(capsys, ["table1", "--config", str(tmp_path / "nope.ini")])
        assert rc == 2

    def test_simulate_smoke(self, capsys, tmp_path):
        out_path = tmp_path / "t.csv"
        rc, _, _ = run(capsys, [
            "table1", "--snr-list", "0", "--simulate", "--seed", "1",
            "--trials", "1", "--bits", "200", "--theta-points", "9", "--ma-window", "3",
            "--out", str(out_path),
        ])
        assert rc == 0
        lines = out_path.read_text().splitlines()
        assert len(lines) == 3
        for line in lines[1:]:
            assert line.split(",")[3] != ""


class TestSweep:
    def test_smoke_schema_and_determinism(self, capsys, tmp_path):
        argv = [
            "sweep", *CASE1, "--snr-db", "0", "--seed", "42",
            "--trials", "1", "--bits", "100", "--theta-points", "11", "--ma-window", "3",
            "--out", str(tmp_path / "a"),
        ]
        rc, _, _ = run(capsys, argv)
        assert rc == 0
        csv_a = (tmp_path / "a.csv").read_bytes()
        summary = json.loads((tmp_path / "a.json").read_text())
        assert summary["schema_version"] == 1
        assert summary["seed"] == 42
        assert len(csv_a.splitlines()) == 12

        argv[argv.index(str(tmp_path / "a"))] = str(tmp_path / "b")
        rc, _, _ = run(capsys, argv)
        assert rc == 0
        assert (tmp_path / "b.csv").read_bytes() == csv_a

    def test_summary_round_trip_through_cli(self, capsys, tmp_path):
        argv = [
            "sweep", *CASE1, "--snr-db", "3", "--seed", "7",
            "--trials", "2", "--bits", "150", "--theta-points", "7", "--ma-window", "3",
            "--out", str(tmp_path / "first"),
        ]
        assert run(capsys, argv)[0] == 0
        summary = json.loads((tmp_path / "first.json").read_text())
        cfg = summary["config"]
        argv2 = [
            "sweep",
            "--eps1", repr(cfg["eps1"]), "--eps2", repr(cfg["eps2"]),
            "--p1", repr(cfg["p1"]), "--p2", repr(cfg["p2"]), "--n0", repr(cfg["n0"]),
            "--seed", str(cfg["seed"]), "--trials", str(cfg["trials"]),
            "--bits", str(cfg["bits_per_trial"]), "--theta-points", str(cfg["theta_points"]),
            "--ma-window", str(cfg["ma_window"]), "--out", str(tmp_path / "second"),
        ]
        assert run(capsys, argv2)[0] == 0
        assert (tmp_path / "second.csv").read_bytes() == (tmp_path / "first.csv").read_bytes()

    def test_snr_list_mode(self, capsys, tmp_path):
        rc, _, _ = run(capsys, [
            "sweep", *CASE1, "--snr-db", "0", "--snr-list", "0,3", "--seed", "5",
            "--trials", "1", "--bits", "100", "--theta-points", "5", "--ma-window", "3",
            "--out", str(tmp_path / "curve"),
        ])
        assert rc == 0
        lines = (tmp_path / "curve.csv").read_text().splitlines()
        assert lines[0] == "snr_db,n0,theta_ub_star,pe_ub_star,theta_exp_star,pe_exp_star,pe_exp_ci"
        assert len(lines) == 3
        summary = json.loads((tmp_path / "curve.json").read_text())
        assert summary["mode"] == "snr_list"
        assert len(summary["rows"]) == 2

    def test_unwritable_output_exit_three_removes_partials(self, capsys, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        rc, _, err = run(capsys, [
            "sweep", *CASE1, "--snr-db", "0", "--seed", "1",
            "--trials", "1", "--bits", "50", "--theta-points", "5", "--ma-window", "3",
            "--out", str(blocker / "x"),
        ])
        assert rc == 3
        assert "i/o error" in err

    def test_partial_outputs_removed_when_json_write_fails(self, capsys, tmp_path, monkeypatch):
        # force the second file write to fail after the CSV exists
        import noma_fusion.cli as cli_mod

        real_open = open
        def failing_open(path, *a, **k):
            if str(path).endswith(".json"):
                raise OSError("disk full")
            return real_open(path, *a, **k)

        monkeypatch.setattr("builtins.open", failing_open)
        rc, _, _ = run(capsys, [
            "sweep", *CASE1, "--snr-db", "0", "--seed", "1",
            "--trials", "1", "--bits", "50", "--theta-points", "5", "--ma-window", "3",
            "--out", str(tmp_path / "p"),
        ])
        assert rc == 3
        assert not (tmp_path / "p.csv").exists()


class TestRegions:
    def test_csv_to_stdout(self, capsys):
        rc, out, _ = run(capsys, [
            "regions", "--eps1", "0.15", "--eps2", "0.17", "--p1", "1", "--p2", "1.5",
            "--n0", "1", "--theta", repr(math.pi / 2),
            "--xmin", "-4", "--xmax", "4", "--ymin", "-4", "--ymax", "4",
            "--nx", "8", "--ny", "8",
        ])
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "x,y,bit"
        assert len(lines) == 65

    def test_high_snr_analytic_mode(self, capsys):
        rc, out, _ = run(capsys, [
            "regions", "--eps1", "0.05", "--eps2", "0.1", "--p1", "1", "--p2", "2",
            "--n0", "0.0003", "--theta", repr(math.pi / 3),
            "--nx", "4", "--ny", "4", "--high-snr-analytic",
        ])
        assert rc == 0
        assert out.splitlines()[0] == "x,y,bit"

    def test_compare_agreement(self, capsys):
        rc, out, _ = run(capsys, [
            "regions", "--eps1", "0.05", "--eps2", "0.1", "--p1", "1", "--p2", "2",
            "--n0", "0.0003", "--theta", repr(math.pi / 3),
            "--nx", "100", "--ny", "100", "--compare",
        ])
        assert rc == 0
        assert json.loads(out)["agreement"] >= 0.999

    def test_degenerate_bounds_exit_two(self, capsys):
        rc, _, _ = run(capsys, [
            "regions", *CASE1, "--n0", "1", "--theta", "0.5",
            "--xmin", "1", "--xmax", "1", "--nx", "4", "--ny", "4",
        ])
        assert rc == 2

    def test_raster_file_output(self, capsys, tmp_path):
        out_path = tmp_path / "r.csv"
        rc, _, _ = run(capsys, [
            "regions", *CASE1, "--n0", "1", "--theta", "0.5",
            "--nx", "4", "--ny", "4", "--out", str(out_path),
        ])
        assert rc == 0
        assert out_path.read_text().startswith("x,y,bit\n")


class TestManifest:
    def test_written_on_success(self, capsys, tmp_path):
        manifest = tmp_path / "m.json"
        rc, _, _ = run(capsys, ["design", *CASE1, "--snr-db", "0", "--manifest", str(manifest)])
        assert rc == 0
        data = json.loads(manifest.read_text())
        assert data["command"] == "design"
        assert data["status"] == "ok"
        assert data["duration_s"] >= 0.0
        assert data["version"]

    def test_written_even_on_failure(self, capsys, tmp_path):
        manifest = tmp_path / "m.json"
        rc, _, _ = run(capsys, [
            "design", "--eps1", "0.2", "--eps2", "0.1", "--p1", "1", "--p2", "1",
            "--n0", "1", "--manifest", str(manifest),
        ])
        assert rc == 2
        data = json.loads(manifest.read_text())
        assert data["status"] == "error"
        assert "eps1" in data["error"]

    def test_lists_outputs(self, capsys, tmp_path):
        manifest = tmp_path / "m.json"
        rc, _, _ = run(capsys, [
            "sweep", *CASE1, "--snr-db", "0", "--seed", "1",
            "--trials", "1", "--bits", "50", "--theta-points", "5", "--ma-window", "3",
            "--out", str(tmp_path / "s"), "--manifest", str(manifest),
        ])
        assert rc == 0
        data = json.loads(manifest.read_text())
        assert sorted(os.path.basename(p) for p in data["outputs"]) == ["s.csv", "s.json"]
