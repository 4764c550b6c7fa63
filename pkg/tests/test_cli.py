import io
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from phasecontrol import scan
from phasecontrol.cli import eval_number, fmt, main
from phasecontrol.domain import EffectiveDrive, Relaxation

from oracles import omega_eff_mp, rho22_mp, rho22_undamped_mp

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(GOLDEN))
import make_goldens  # noqa: E402


def run(args):
    out, err = io.StringIO(), io.StringIO()
    code = main(args, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def parse_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    return header, rows


# golden files: values against independent oracles, then byte equality

def test_evolve_golden_values():
    header, rows = parse_csv((GOLDEN / "evolve.csv").read_text())
    assert header == ["t", "u", "v", "w", "rho22"]
    t = rows[:, 0]
    np.testing.assert_array_equal(t, [0, 0.25, 0.5, 0.75, 1])
    om = 2 * math.pi
    np.testing.assert_allclose(rows[:, 1], 0.0, atol=0)
    np.testing.assert_allclose(rows[:, 2], -np.sin(om * t), atol=1e-12)
    np.testing.assert_allclose(rows[:, 3], -np.cos(om * t), atol=1e-12)
    np.testing.assert_allclose(rows[:, 4], [0, 0.5, 1, 0.5, 0], atol=1e-12)


def test_profile_golden_values():
    header, rows = parse_csv((GOLDEN / "profile.csv").read_text())
    assert header == ["phi_cap", "omega_eff", "rho22"]
    m = math.pi / 5
    np.testing.assert_allclose(rows[:, 0], [0, math.pi / 2, math.pi, 3 * math.pi / 2], rtol=1e-15)
    for phi, om, rho in rows:
        assert om == pytest.approx(omega_eff_mp(m, phi), abs=1e-12)
        assert rho == pytest.approx(rho22_undamped_mp(omega_eff_mp(m, phi), 0.25), abs=1e-12)
    np.testing.assert_allclose(rows[:, 2], [0.0244717, 0.0122864, 0, 0.0122864], atol=1e-6)
    assert (GOLDEN / "profile.csv").read_text().endswith(f"# C={fmt(rows[0, 2])}\n")


def test_profile_strong_golden_values():
    _, rows = parse_csv((GOLDEN / "profile_strong.csv").read_text())
    for phi, om, rho in rows[::3]:
        assert om == pytest.approx(omega_eff_mp(2 * math.pi, phi), abs=1e-12)
        assert rho == pytest.approx(rho22_mp(om, math.pi, 0.75), abs=1e-12)


def test_sweep_golden_values():
    index = (GOLDEN / "sweep_fig2" / "index.csv").read_text().splitlines()
    assert index[0] == "file,mag,gamma_p,t_off,C"
    assert len(index) == 17
    for line in index[1:]:
        name, mag, gp, toff, c = line.split(",")
        mag, gp, toff, c = map(float, (mag, gp, toff, c))
        _, rows = parse_csv((GOLDEN / "sweep_fig2" / name).read_text())
        assert len(rows) == scan.DEFAULT_N_PHI
        for phi, om, rho in rows[::16]:
            assert om == pytest.approx(omega_eff_mp(mag, phi), abs=1e-12)
            assert rho == pytest.approx(rho22_mp(om, gp, toff), abs=1e-12)
        assert c == rows[:, 2].max() - rows[:, 2].min()


@pytest.mark.parametrize("name, args", [("evolve.csv", make_goldens.EVOLVE_ARGS),
                                        ("profile.csv", make_goldens.PROFILE_ARGS),
                                        ("profile_strong.csv", make_goldens.PROFILE_STRONG_ARGS)])
def test_golden_bytes(name, args):
    code, out, _ = run(args)
    assert code == 0
    assert out.encode() == (GOLDEN / name).read_bytes()


def test_sweep_golden_bytes(tmp_path):
    code, _, _ = run(["sweep", "--preset", "fig2", "--out-dir", str(tmp_path)])
    assert code == 0
    expected = sorted(p.name for p in (GOLDEN / "sweep_fig2").iterdir())
    assert sorted(p.name for p in tmp_path.iterdir()) == expected
    for name in expected:
        assert (tmp_path / name).read_bytes() == (GOLDEN / "sweep_fig2" / name).read_bytes()


# evolve

def test_evolve_dark_ode():
    code, out, _ = run(["evolve", "--omega-eff", "0", "--gamma-p", "1", "--t-end", "1",
                        "--samples", "3", "--method", "ode"])
    assert code == 0
    _, rows = parse_csv(out)
    np.testing.assert_array_equal(rows[:, 4], 0.0)


def test_evolve_missing_t_end():
    code, _, err = run(["evolve", "--omega-eff", "1"])
    assert code == 2 and "--t-end" in err


def test_evolve_analytic_with_detuning():
    code, _, err = run(["evolve", "--omega-eff", "1", "--delta", "0.5", "--t-end", "1"])
    assert code == 2 and "delta" in err
    code, _, _ = run(["evolve", "--omega-eff", "1", "--delta", "0.5", "--t-end", "1", "--method", "ode"])
    assert code == 0


def test_evolve_pathways_and_roundtrip():
    args = ["evolve", "--omega-h", "2", "--omega-f", "1.5", "--theta-f", "pi", "--phi", "0.3",
            "--gamma-p", "0.7", "--t-end", "2", "--samples", "21"]
    code, out, _ = run(args)
    assert code == 0
    _, rows = parse_csv(out)
    from phasecontrol import PathwaySet, time_series
    ts = time_series(PathwaySet(2, 0, 1.5, math.pi, 0.3), Relaxation(gamma_p=0.7), 2.0, 21)
    np.testing.assert_array_equal(rows[:, 0], ts.times)
    np.testing.assert_array_equal(rows[:, 1:4], ts.states)
    np.testing.assert_array_equal(rows[:, 4], ts.rho22)
    assert run(args)[1] == out


def test_evolve_ode_step_and_out(tmp_path):
    target = tmp_path / "run.csv"
    code, out, _ = run(["evolve", "--omega-eff", "6.283185307179586", "--gamma-p", "3.141592653589793",
                        "--t-end", "2", "--samples", "9", "--method", "ode", "--step", "0.001",
                        "--out", str(target)])
    assert code == 0 and out == ""
    _, rows = parse_csv(target.read_text())
    ts = scan.time_series(EffectiveDrive(2 * math.pi), Relaxation(gamma_p=math.pi), 2.0, 9, "analytic")
    assert np.max(np.abs(rows[:, 1:4] - ts.states)) < 1e-8


def test_evolve_conflicting_drive_flags():
    code, _, _ = run(["evolve", "--omega-eff", "1", "--omega-h", "1", "--omega-f", "1", "--t-end", "1"])
    assert code == 2


def test_evolve_stability_error():
    code, _, err = run(["evolve", "--omega-eff", "10", "--t-end", "1", "--samples", "2", "--method", "ode", "--step", "0.05"])
    assert code == 1 and "step" in err


# profile

def test_profile_mu_sign_shift():
    base = ["profile", "--mag", "2pi", "--gamma-p", "pi", "--t-off", "0.75", "--n-phi", "16"]
    _, plus, _ = run(base)
    _, minus, _ = run(base + ["--mu-sign", "-"])
    _, rp = parse_csv(plus)
    _, rm = parse_csv(minus)
    np.testing.assert_allclose(rm[:, 2], np.roll(rp[:, 2], -8), atol=1e-12)
    np.testing.assert_allclose(rm[:, 0], rp[:, 0] + math.pi, atol=1e-15)


def test_profile_n_phi_one():
    code, _, _ = run(["profile", "--mag", "1", "--t-off", "1", "--n-phi", "1"])
    assert code == 2


def test_profile_comment_after_header():
    _, out, _ = run(make_goldens.PROFILE_ARGS)
    lines = out.split("\n")
    assert lines[0] == "phi_cap,omega_eff,rho22"
    assert lines[-2].startswith("# C=") and lines[-1] == ""
    assert "\r" not in out


# sweep

def test_sweep_fig1(tmp_path):
    code, _, _ = run(["sweep", "--preset", "fig1", "--out-dir", str(tmp_path)])
    assert code == 0
    files = sorted(p.name for p in tmp_path.glob("fig1_*.csv"))
    assert len(files) == 5
    assert "fig1_oe6.2832_gp0.csv" in files
    index = (tmp_path / "index.csv").read_text().splitlines()
    assert index[0] == "file,omega_eff,gamma_p,rho22_end" and len(index) == 6


def test_sweep_overrides(tmp_path):
    code, _, _ = run(["sweep", "--preset", "fig2", "--out-dir", str(tmp_path), "--mags", "pi/5",
                      "--gammas", "0", "--t-offs", "0.5,0.25", "--n-phi", "8"])
    assert code == 0
    index = (tmp_path / "index.csv").read_text().splitlines()
    assert [ln.split(",")[0] for ln in index[1:]] == ["fig2_mag0.6283_gp0_toff0.25.csv",
                                                      "fig2_mag0.6283_gp0_toff0.5.csv"]


def test_sweep_bad_preset(tmp_path):
    code, _, err = run(["sweep", "--preset", "bogus", "--out-dir", str(tmp_path)])
    assert code == 2 and "bogus" in err


def test_sweep_unwritable(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, _ = run(["sweep", "--preset", "fig2", "--out-dir", str(blocker / "sub")])
    assert code == 1


# mu3

def write(tmp_path, text):
    p = tmp_path / "levels.csv"
    p.write_text(text)
    return str(p)


def test_mu3_single_row(tmp_path):
    assert run(["mu3", "--levels", write(tmp_path, "1,0,1,0,1,0,2,0\n"), "--omega-f", "1"])[1] == "0.25,0\n"


def test_mu3_empty(tmp_path):
    assert run(["mu3", "--levels", write(tmp_path, ""), "--omega-f", "1"])[1] == "0,0\n"


def test_mu3_two_rows(tmp_path):
    out = run(["mu3", "--levels", write(tmp_path, "1,0,1,0,1,0,2,0\n1,0,1,0,1,0,3,0\n"), "--omega-f", "1"])[1]
    assert out == "0.375,0\n"


def test_mu3_singular(tmp_path):
    code, _, err = run(["mu3", "--levels", write(tmp_path, "1,0,1,0,1,0,1,0\n"), "--omega-f", "1"])
    assert code == 1 and "line 1" in err


@pytest.mark.parametrize("text, line", [("1,0,1,0,1,0,2\n", 1), ("1,0,1,0,1,0,2,0\n1,0,x,0,1,0,2,0\n", 2)])
def test_mu3_malformed(tmp_path, text, line):
    code, _, err = run(["mu3", "--levels", write(tmp_path, text), "--omega-f", "1"])
    assert code == 1 and f"line {line}" in err


# config, numbers, process-level exit codes

def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# evolve defaults\nomega-eff = 2pi\nt_end = 1\nsamples = 5\n")
    code, out, _ = run(["--config", str(cfg), "evolve"])
    assert code == 0
    assert out == (GOLDEN / "evolve.csv").read_text()
    code, out, _ = run(["--config", str(cfg), "evolve", "--samples", "3"])
    assert len(out.splitlines()) == 4


def test_config_bad_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("omega-eff 3\n")
    assert run(["--config", str(cfg), "evolve"])[0] == 2


@pytest.mark.parametrize("text, value", [("2pi", 2 * math.pi), ("pi/5", math.pi / 5), ("-pi", -math.pi),
                                         ("0.5*pi", 0.5 * math.pi), ("1e-3", 1e-3)])
def test_eval_number(text, value):
    assert eval_number(text) == value


def test_module_entry_point_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "phasecontrol", "evolve", "--omega-eff", "1",
                         "--t-end", "1", "--samples", "2"], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout.startswith("t,u,v,w,rho22\n")
    bad = subprocess.run([sys.executable, "-m", "phasecontrol", "evolve", "--bogus"],
                         capture_output=True, text=True)
    assert bad.returncode == 2
