"""CLI surface tests: subcommands, file formats, exit codes."""

import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from barlab.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_sample_writes_cloud(runner, tmp_path):
    out = tmp_path / "cloud.csv"
    res = runner.invoke(
        main, ["sample", "--d", "2", "--alpha", "4", "--n", "200", "--seed", "3",
               "--out", str(out)]
    )
    assert res.exit_code == 0, res.output
    lines = out.read_text().splitlines()
    assert lines[0] == "x1,x2"
    assert len(lines) > 100


def test_sample_with_regime_restriction(runner, tmp_path):
    out = tmp_path / "cloud.csv"
    res = runner.invoke(
        main, ["sample", "--n", "5000", "--seed", "4", "--out", str(out),
               "--regime", "III", "--lam", "0.05"]
    )
    assert res.exit_code == 0, res.output
    pts = np.loadtxt(out, delimiter=",", skiprows=1, ndmin=2)
    if pts.size:
        radius = float(res.output.split("radius:")[1].splitlines()[0])
        assert (np.linalg.norm(pts, axis=1) >= radius - 1e-9).all()


def test_persist_outputs(runner, tmp_path):
    cloud = tmp_path / "square.csv"
    cloud.write_text("x1,x2\n0.0,0.0\n1.0,0.0\n1.0,1.0\n0.0,1.0\n")
    prefix = str(tmp_path / "sq")
    res = runner.invoke(
        main, ["persist", "--cloud", str(cloud), "--k", "1", "--t-max", "2.0",
               "--out-prefix", prefix]
    )
    assert res.exit_code == 0, res.output
    bars = (tmp_path / "sq_barcode.csv").read_text().splitlines()
    assert bars[0] == "k,birth,death"
    assert len(bars) == 2
    birth, death = float(bars[1].split(",")[1]), float(bars[1].split(",")[2])
    assert birth == pytest.approx(1.0)
    assert death == pytest.approx(math.sqrt(2.0))
    betti = (tmp_path / "sq_betti.csv").read_text().splitlines()
    assert betti[0] == "s,beta"
    life = (tmp_path / "sq_lifetime.csv").read_text().splitlines()
    assert life[0] == "t,L"


def test_indicators_json(runner, tmp_path):
    pts = tmp_path / "tri.csv"
    s = 0.9
    pts.write_text(f"x1,x2\n0.0,0.0\n{s},0.0\n{s / 2},{s * math.sqrt(3) / 2}\n")
    res = runner.invoke(main, ["indicators", "--points", str(pts), "--t", "1.0"])
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    assert out["h_plus"] == 1 and out["h_minus"] == 0 and out["h"] == 1
    assert out["betti_k"] == 1


def test_limits_ck_value(runner):
    res = runner.invoke(
        main, ["limits", "--ck", "--d", "2", "--k", "1", "--alpha", "4"]
    )
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    assert out["c_k"] == pytest.approx(0.10472, abs=5e-6)  # pi/30 to 5 decimals


def test_limits_indicator_and_mu(runner, tmp_path):
    out = tmp_path / "lim.json"
    res = runner.invoke(
        main, ["limits", "--indicator", "h", "--t", "1.0",
               "--mc-samples", "50000", "--seed", "1", "--out", str(out)]
    )
    assert res.exit_code == 0, res.output
    data = json.loads(out.read_text())
    assert data["indicator_h"]["value"] > 0
    assert data["indicator_h"]["std_error"] > 0


def test_simulate_paths(runner, tmp_path):
    out_dir = tmp_path / "paths"
    res = runner.invoke(
        main, ["simulate", "--which", "Vpm", "--t-grid", "0.5,1.0",
               "--n-paths", "2", "--seed", "5", "--out-dir", str(out_dir)]
    )
    assert res.exit_code == 0, res.output
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == ["Vminus_0.csv", "Vminus_1.csv", "Vplus_0.csv", "Vplus_1.csv"]
    lines = (out_dir / "Vplus_0.csv").read_text().splitlines()
    assert lines[0] == "t,value"


def test_experiment_roundtrip(runner, tmp_path):
    cfg = {
        "d": 2, "alpha": 4.0, "regime": "I", "n": 300, "k": 1,
        "t_grid": [0.5, 1.0], "replications": 20, "seed": 9,
        "compute_targets": False,
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out_dir = tmp_path / "run"
    res = runner.invoke(
        main, ["experiment", "--config", str(cfg_path), "--out-dir", str(out_dir)]
    )
    assert res.exit_code == 0, res.output
    report = json.loads((out_dir / "report.json").read_text())
    assert report["per_n"][0]["n"] == 300.0


def test_experiment_missing_config_exit2(runner, tmp_path):
    res = runner.invoke(main, ["experiment", "--config", str(tmp_path / "nope.json")])
    assert res.exit_code == 2


def test_experiment_malformed_config_exit2(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    res = runner.invoke(main, ["experiment", "--config", str(bad)])
    assert res.exit_code == 2
    assert "line" in res.output


def test_verify_single_suite(runner):
    res = runner.invoke(main, ["verify", "--suite", "identity"])
    assert res.exit_code == 0, res.output
    assert "[PASS] lifetime-identity" in res.output


def test_verify_unknown_suite_exit2(runner):
    res = runner.invoke(main, ["verify", "--suite", "bogus"])
    assert res.exit_code == 2


def test_verify_list(runner):
    res = runner.invoke(main, ["verify", "--list"])
    assert res.exit_code == 0
    assert "identity" in res.output
    assert "determinism" in res.output
