import csv
import json
import os

import numpy as np
import pytest

from ricciflow import cli, snapshots


def run(args):
    return cli.main(args)


def test_console_script_entry_point(tmp_path):
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "ricciflow.cli", "surface", "init",
                          "--c3", "0", "--c5", "0", "--grid", "64",
                          "--out", str(tmp_path / "s.json")],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert (tmp_path / "s.json").exists()


class TestSurfaceCommands:
    def test_init_round(self, tmp_path):
        out = tmp_path / "round.json"
        assert run(["surface", "init", "--c3", "0", "--c5", "0",
                    "--grid", "128", "--out", str(out)]) == 0
        p = snapshots.load_snapshot(out)
        assert p.n == 128
        assert np.allclose(p.h, 1.0)

    def test_init_dumbbell(self, tmp_path):
        out = tmp_path / "dumb.json"
        assert run(["surface", "init", "--c3", "0.766", "--c5", "-0.091",
                    "--out", str(out)]) == 0

    def test_init_inadmissible_exits_nonzero(self, tmp_path, capsys):
        out = tmp_path / "bad.json"
        rc = run(["surface", "init", "--c3", "-0.2", "--c5", "0", "--out", str(out)])
        assert rc == 1
        assert "embeddability" in capsys.readouterr().err
        assert not out.exists()

    def test_flow_round_writes_snapshots_and_csv(self, tmp_path):
        snap = tmp_path / "round.json"
        run(["surface", "init", "--c3", "0", "--c5", "0", "--grid", "128", "--out", str(snap)])
        outdir = tmp_path / "flow"
        rc = run(["surface", "flow", "--in", str(snap), "--dt", "1e-3", "--steps", "100",
                  "--snapshot-every", "10", "--out-dir", str(outdir)])
        assert rc == 0
        snaps = sorted(os.listdir(outdir))
        assert "diagnostics.csv" in snaps
        assert sum(1 for s in snaps if s.startswith("snapshot_")) == 10
        with open(outdir / "diagnostics.csv") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 100
        for row in rows:
            assert float(row["h_const"]) == pytest.approx(1 - 2 * float(row["t"]), abs=1e-3)

    def test_backward_flow_exits_unstable(self, tmp_path):
        snap = tmp_path / "dumb.json"
        run(["surface", "init", "--c3", "0.766", "--c5", "-0.091", "--out", str(snap)])
        rc = run(["surface", "flow", "--in", str(snap), "--dt=-2e-3", "--steps", "2000",
                  "--snapshot-every", "50", "--out-dir", str(tmp_path / "back")])
        assert rc == 3

    def test_mesh_export(self, tmp_path):
        snap = tmp_path / "round.json"
        run(["surface", "init", "--c3", "0", "--c5", "0", "--grid", "64", "--out", str(snap)])
        obj = tmp_path / "round.obj"
        rc = run(["surface", "mesh", "--in", str(snap), "--segments", "16", "--out", str(obj)])
        assert rc == 0
        text = obj.read_text()
        assert text.count("\nf ") + text.startswith("f ") == 2 * 16 * 63


class TestM3Commands:
    def test_fd_ladder(self, tmp_path):
        outdir = tmp_path / "fd"
        rc = run(["m3", "flow", "--mode", "fd", "--grid", "256", "--out-dir", str(outdir)])
        assert rc == 0
        with open(outdir / "fd_neck.csv") as f:
            rows = list(csv.DictReader(f))
        m0 = [float(r["m0"]) for r in rows]
        assert all(b < a for a, b in zip(m0, m0[1:]))
        assert rows[-1]["status"] == "pinched"

    def test_series_run_and_fit(self, tmp_path):
        outdir = tmp_path / "series"
        rc = run(["m3", "flow", "--mode", "series", "--profile", "paper",
                  "--stop-m0", "1e-7", "--eta", "1e-3",
                  "--times", "6e-5,7e-5,7.5e-5,7.8e-5,7.9e-5,7.92e-5",
                  "--out-dir", str(outdir)])
        assert rc == 0
        run_csv = outdir / "series_run.csv"
        assert run_csv.exists()
        fit_out = tmp_path / "fits.csv"
        rc = run(["m3", "fit", "--in", str(run_csv), "--quantity", "all",
                  "--grid", "4000", "--out", str(fit_out)])
        assert rc == 0
        with open(fit_out) as f:
            rows = list(csv.DictReader(f))
        assert {r["quantity"] for r in rows} == {"m", "h", "R", "Kab", "Kbc"}
        assert (tmp_path / "fits.json").exists()
        data = json.loads((tmp_path / "fits.json").read_text())
        m_row = next(r for r in data if r["quantity"] == "m")
        # coarse early-time samples still land near the linear-ish decay
        assert 0.8 < m_row["p"] < 1.2

    def test_single_quantity_fit(self, tmp_path):
        outdir = tmp_path / "series"
        run(["m3", "flow", "--mode", "series", "--stop-m0", "1e-7",
             "--times", "6e-5,7e-5,7.5e-5,7.8e-5,7.9e-5",
             "--out-dir", str(outdir)])
        fit_out = tmp_path / "m.json"
        rc = run(["m3", "fit", "--in", str(outdir / "series_run.csv"),
                  "--quantity", "m", "--grid", "2000", "--out", str(fit_out)])
        assert rc == 0
        data = json.loads(fit_out.read_text())
        assert len(data) == 1 and data[0]["quantity"] == "m"
