"""Command-line interface: artifacts, determinism, config handling and exit
codes."""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from dipcrystal.specfun import ZETA_3


def run_cli(args, outdir, config_text=None, extra_env=None):
    env = dict(os.environ)
    env["DIPCRYSTAL_OUTDIR"] = str(outdir)
    if extra_env:
        env.update(extra_env)
    cmd = [sys.executable, "-m", "dipcrystal.cli"]
    if config_text is not None:
        cfg = outdir / "run.cfg"
        cfg.write_text(config_text)
        cmd += ["--config", str(cfg)]
    cmd += args
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def test_help_exits_zero(tmp_path):
    res = run_cli(["--help"], tmp_path)
    assert res.returncode == 0
    assert "stability" in res.stdout


def test_band_1d_artifact_and_determinism(tmp_path):
    res = run_cli(["band", "--dim", "1", "--points", "64"], tmp_path)
    assert res.returncode == 0, res.stderr
    path = tmp_path / "band_1d.csv"
    first = path.read_bytes()
    lines = path.read_text().splitlines()
    assert lines[0] == "k,J,f,g,E_kUdd"
    row0 = [float(v) for v in lines[1].split(",")]
    assert row0[0] == 0.0
    assert abs(row0[1] - 2.0 * ZETA_3) < 1e-10
    # a second run reproduces the artifact byte for byte
    res2 = run_cli(["band", "--dim", "1", "--points", "64"], tmp_path)
    assert res2.returncode == 0
    assert path.read_bytes() == first


def test_band_2d_path(tmp_path):
    res = run_cli(["band", "--dim", "2", "--points", "48"], tmp_path)
    assert res.returncode == 0, res.stderr
    lines = (tmp_path / "band_2d.csv").read_text().splitlines()
    assert lines[0] == "s,kx,ky,J,f1,f2"
    first = [float(v) for v in lines[1].split(",")]
    last = [float(v) for v in lines[-1].split(",")]
    # path starts and ends at the zone center
    assert first[1] == first[2] == 0.0
    assert abs(last[1]) < 1e-12 and abs(last[2]) < 1e-12
    assert abs(first[3] - 11.034) < 0.01


def test_rotor_find_sweet_spot(tmp_path):
    res = run_cli(["rotor", "find", "--kind", "sweet", "--g", "1,0",
                   "--e", "2,0", "--bracket", "2,4"], tmp_path)
    assert res.returncode == 0, res.stderr
    data = json.loads((tmp_path / "rotor_find.json").read_text())
    assert data["schema_version"] == 1
    assert abs(data["E_b"] - 3.05) < 0.01
    assert abs(data["pair"]["epsilon"]) < 1e-8
    assert abs(data["pair"]["kappa"] - 10.23) < 0.01


def test_lifetime_json_with_si(tmp_path):
    res = run_cli(["lifetime", "--kappa", "1.2", "--epsilon", "0.3",
                   "--gamma", "4", "--tau", "0.5",
                   "--a0-nm", "70", "--mu-g-debye", "0.7"], tmp_path)
    assert res.returncode == 0, res.stderr
    data = json.loads((tmp_path / "lifetime.json").read_text())
    assert data["regime"] in ("weak", "strong")
    assert data["W"] > 0.0
    assert "si" in data and data["si"]["W_hz"] > 0.0


def test_trap_solve_and_spectra(tmp_path):
    res = run_cli(["trap", "solve", "--n", "40"], tmp_path)
    assert res.returncode == 0, res.stderr
    lines = (tmp_path / "trap_positions_N40.csv").read_text().splitlines()
    assert lines[0] == "i,x_a0,density_analytic"
    assert len(lines) == 41
    xs = np.array([float(l.split(",")[1]) for l in lines[1:]])
    assert np.all(np.diff(xs) > 0)
    res = run_cli(["trap", "spectra", "--n", "40", "--what", "excitons"],
                  tmp_path)
    assert res.returncode == 0, res.stderr
    lines = (tmp_path / "trap_excitons_N40.csv").read_text().splitlines()
    vals = np.array([float(l.split(",")[1]) for l in lines[1:]])
    # top of the band approaches 2 zeta(3) from below (finite-size edge)
    assert 0.9 * 2.0 * ZETA_3 < vals[0] < 2.0 * ZETA_3
    assert np.all(np.diff(vals) < 1e-12)


def test_stability_violation_exit_code_and_report(tmp_path):
    res = run_cli(["stability", "--gamma", "20", "--tau", "1",
                   "--nu-perp-tilde", "0.5"], tmp_path)
    assert res.returncode == 3
    data = json.loads((tmp_path / "stability.json").read_text())
    assert data["zigzag_ok"] is False
    ok = run_cli(["stability", "--gamma", "20", "--tau", "1",
                  "--nu-perp-tilde", "2.0"], tmp_path)
    assert ok.returncode == 0, ok.stderr


def test_bad_config_exit_code(tmp_path):
    res = run_cli(["band"], tmp_path,
                  config_text="[crystal]\nwarp_factor = 9\n")
    assert res.returncode == 1
    assert "warp_factor" in res.stderr
    res2 = run_cli(["rotor", "pair", "--g", "1;0", "--e", "2,0",
                    "--eb", "3.0"], tmp_path)
    assert res2.returncode == 1


def test_config_value_used_and_flag_wins(tmp_path):
    cfg = "[numerics]\npoints = 16\n"
    res = run_cli(["band", "--dim", "1"], tmp_path, config_text=cfg)
    assert res.returncode == 0, res.stderr
    assert len((tmp_path / "band_1d.csv").read_text().splitlines()) == 17
    res = run_cli(["band", "--dim", "1", "--points", "8"], tmp_path,
                  config_text=cfg)
    assert res.returncode == 0
    assert len((tmp_path / "band_1d.csv").read_text().splitlines()) == 9


def test_outdir_flag_overrides_env(tmp_path):
    sub = tmp_path / "elsewhere"
    sub.mkdir()
    res = run_cli(["--outdir", str(sub), "coupling", "--q", "1.0",
                   "--kappa", "1.0", "--epsilon", "0.5", "--gamma", "4"],
                  tmp_path)
    assert res.returncode == 0, res.stderr
    assert (sub / "coupling.json").exists()
    assert not (tmp_path / "coupling.json").exists()


def test_fidelity_command(tmp_path):
    res = run_cli(["fidelity", "--n", "100", "--n-eff", "1e4"], tmp_path)
    assert res.returncode == 0, res.stderr
    data = json.loads((tmp_path / "fidelity.json").read_text())
    assert abs(data["si"]["fidelity"] - 0.994) < 0.003
    assert data["si"]["g_N_Hz"] == pytest.approx(8e6)


def test_case_study_command(tmp_path):
    res = run_cli(["case-study", "cabr", "--n-crystal", "100"], tmp_path)
    assert res.returncode == 0, res.stderr
    data = json.loads((tmp_path / "case_study_cabr.json").read_text())
    assert abs(data["U_dd_hz"] - 215.6e3) < 3e3
    assert abs(data["fidelity"] - 0.994) < 0.002


def test_convergence_error_exit_code(tmp_path, monkeypatch):
    """The exit-code mapping routes ConvergenceError to 2."""
    import dipcrystal.cli as cli_mod
    from dipcrystal.errors import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("did not converge", diagnostics={})

    monkeypatch.setattr(cli_mod.tr, "equilibrium_positions", boom)
    monkeypatch.setattr(sys, "argv",
                        ["dipcrystal", "--outdir", str(tmp_path),
                         "trap", "solve", "--n", "10"])
    with pytest.raises(SystemExit) as exc:
        cli_mod.main()
    assert exc.value.code == 2
