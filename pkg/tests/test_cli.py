import csv
import json
import math
import subprocess
import sys

import pytest

from cklie import cli, lie_hamilton, verify
from cklie.ck_space import CANONICAL_SPACES
from cklie.config import ExperimentConfig

ROTATION = """\
space: euclidean
coefficients:
  b1: {kind: constant, c: 0}
  b2: {kind: constant, c: 0}
  b3: {kind: constant, c: 1}
initial_points: [[1, 0]]
time: {t0: 0, t1: 1.5707963267948966, step: 1.0e-3}
"""

MERIDIAN = """\
space: sphere
coefficients:
  b1: {kind: constant, c: 0}
  b2: {kind: constant, c: 1}
  b3: {kind: constant, c: 0}
initial_points: [[0, 0]]
time: {t0: 0, t1: 1.2, step: 1.0e-3}
"""


def run(tmp_path, text, *argv):
    cfg = tmp_path / "cfg.yaml"
    cfg.write_text(text)
    out = tmp_path / "out"
    return cli.main([*argv, "--config", str(cfg), "--out", str(out)]), out


def last_row(path):
    with open(path) as fh:
        return [float(v) for v in list(csv.reader(fh))[-1]]


def test_integrate_rotation(tmp_path):
    code, out = run(tmp_path, ROTATION, "integrate")
    assert code == 0
    t, x, y = last_row(out / "trajectory_0.csv")
    assert t == pytest.approx(math.pi / 2) and (x, y) == pytest.approx((0, -1), abs=1e-8)
    report = json.loads((out / "integrate.json").read_text())
    assert report["seed"] == 20240607 and report["trajectories"][0]["end"] == pytest.approx([0, -1], abs=1e-8)
    assert (out / "trajectory_0.meta.yaml").exists()


def test_integrate_meridian(tmp_path):
    code, out = run(tmp_path, MERIDIAN, "integrate")
    assert code == 0
    assert last_row(out / "trajectory_0.csv")[1:] == pytest.approx([0.0, 1.2], abs=1e-12)


def test_integrate_needs_points(tmp_path, capsys):
    code, _ = run(tmp_path, "space: sphere\ninitial_points: []\n", "integrate")
    assert code == 2
    assert "initial_points" in capsys.readouterr().err


def test_config_error_exit_code(tmp_path, capsys):
    code, _ = run(tmp_path, "space: sphere\nbogus: 1\n", "verify")
    assert code == 2
    assert "line 2" in capsys.readouterr().err


def test_bad_tolerance_and_seed(tmp_path):
    assert run(tmp_path, "", "contract", "--tol", "nope=1")[0] == 2
    assert run(tmp_path, "", "contract", "--tol", "drift")[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "--seed", "-1"])
    assert info.value.code == 2


def test_integration_abort_exit_code(tmp_path, capsys):
    text = MERIDIAN.replace("[[0, 0]]", "[[0.3, 1.5707960]]")
    code, _ = run(tmp_path, text, "integrate")
    assert code == 3
    assert "aborted at t=0.0" in capsys.readouterr().err


def test_superpose_report(tmp_path):
    text = "space: hyperbolic\ninitial_points: [[0.1, 0.2], [-0.3, 0.1], [0.25, -0.3]]\nsamples: 25\n"
    code, out = run(tmp_path, text, "superpose")
    assert code == 0
    report = json.loads((out / "superpose.json").read_text())
    assert report["max_error_best"] < 1e-5 and not report["degenerate"] and report["samples"] == 25
    with open(out / "reconstruction.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 25
    assert all(min(float(r["err_plus"]), float(r["err_minus"])) < 1e-5 for r in rows)


def test_superpose_collinear_flags_degenerate(tmp_path):
    text = "space: euclidean\ninitial_points: [[0, 0], [1, 0], [2, 0]]\n"
    code, out = run(tmp_path, text, "superpose")
    report = json.loads((out / "superpose.json").read_text())
    assert code == 0 and report["degenerate"]
    assert report["max_error_plus"] == pytest.approx(report["max_error_minus"], abs=1e-9)


def test_superpose_needs_three_distinct_points(tmp_path):
    assert run(tmp_path, "initial_points: [[0, 0], [1, 0]]\n", "superpose")[0] == 2
    assert run(tmp_path, "initial_points: [[0, 0], [1, 0], [0, 0]]\n", "superpose")[0] == 2


def test_tables_and_contract(tmp_path):
    code, out = run(tmp_path, "spaces: [sphere, galilean]\n", "tables")
    assert code == 0
    report = json.loads((out / "tables.json").read_text())
    assert set(report["max_discrepancy"]) == {"sphere", "galilean"}
    code, out = run(tmp_path, "", "contract")
    assert code == 0
    assert json.loads((out / "contract.json").read_text())["max_abs_diff"] < 1e-5


def test_verify_fails_on_impossible_tolerance(tmp_path):
    code, out = run(tmp_path, "spaces: [galilean]\n", "verify", "--tol", "lie_bracket=1e-300")
    assert code == 1
    report = json.loads((out / "verify.json").read_text())
    assert "lie_bracket:galilean" in report["failures"] and not report["passed"]


def test_verify_is_deterministic(tmp_path):
    text = "spaces: [minkowski]\n"
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    code_a, out_a = run(tmp_path / "a", text, "verify", "--seed", "99")
    code_b, out_b = run(tmp_path / "b", text, "verify", "--seed", "99")
    assert code_a == code_b == 0
    assert (out_a / "verify.json").read_bytes() == (out_b / "verify.json").read_bytes()
    assert json.loads((out_a / "verify.json").read_text())["seed"] == 99


def test_newtonian_spaces_run_newtonian_suite():
    cfg = ExperimentConfig()
    for name in ("galilean", "euclidean"):
        suites = {r.suite for r in verify.run_space(CANONICAL_SPACES[name], cfg)}
        if CANONICAL_SPACES[name].kappa2 == 0:
            assert "newtonian_rule" in suites and "angle_identity" not in suites
        else:
            assert "angle_identity" in suites and "newtonian_rule" not in suites


def test_corrupted_hamiltonian_is_caught(monkeypatch):
    """Negative control: perturbing one gradient must fail the residual suite."""
    original = lie_hamilton.hamiltonian_gradient

    def corrupted(kp, i, p):
        gx, gy = original(kp, i, p)
        return (gx + 1e-6, gy) if i == 3 else (gx, gy)

    kp = CANONICAL_SPACES["sphere"]
    clean = verify.suite_hamiltonian(kp, 1)
    assert all(r.passed for r in clean)
    monkeypatch.setattr(lie_hamilton, "hamiltonian_gradient", corrupted)
    residual, _ = verify.suite_hamiltonian(kp, 1)
    assert residual.suite == "hamiltonian_residual" and not residual.passed


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cklie", "contract", "--out", str(tmp_path)], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert "kappa1 -> 0" in proc.stdout


def test_verify_default_run_passes(tmp_path):
    code, out = run(tmp_path, "", "verify")
    report = json.loads((out / "verify.json").read_text())
    assert code == 0, report["failures"]
    assert report["spaces"] == list(CANONICAL_SPACES) and report["passed"]
