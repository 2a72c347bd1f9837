import math

import numpy as np
import pytest
import yaml

from cklie.ck_space import CANONICAL_SPACES, KappaPair
from cklie.coalgebra import f2_closed_form
from cklie.config import default_coefficients
from cklie.errors import IntegrationAbort
from cklie.integrator import Trajectory, flow_invariant_drift, integrate
from cklie.lie_hamilton import CoefficientSpec, sinusoid

SPACES = list(CANONICAL_SPACES.items())
EUC, SPH = KappaPair(0, 1), KappaPair(1, 1)


@pytest.mark.parametrize("name, kp", SPACES)
def test_pure_translation(name, kp):
    traj = integrate(kp, CoefficientSpec.constants(1, 0, 0), (0, 0), 0.0, 1.0, 1e-2)
    assert traj.end == pytest.approx((1.0, 0.0), abs=1e-14)


def test_euclidean_rotation_exact_solution():
    traj = integrate(EUC, CoefficientSpec.constants(0, 0, 1), (1, 0), 0.0, math.pi / 2, 1e-3)
    assert traj.end == pytest.approx((0.0, -1.0), abs=1e-8)
    for t, (x, y) in zip(traj.times[::97], traj.raw[::97]):
        assert (x, y) == pytest.approx((math.cos(t), -math.sin(t)), abs=1e-10)


@pytest.mark.parametrize("t1", [0.3, 1.0, 1.5])
def test_meridian_motion(t1):
    traj = integrate(SPH, CoefficientSpec.constants(0, 1, 0), (0, 0), 0.0, t1, 1e-3)
    assert traj.end == pytest.approx((0.0, t1), abs=1e-12)


def test_final_step_lands_on_end_time():
    traj = integrate(EUC, CoefficientSpec.constants(1, 0, 0), (0, 0), 0.0, 1.0, 0.3)
    assert list(traj.times) == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0])
    assert traj.times[-1] == 1.0
    assert len(traj) == 5


def test_time_dependent_euclidean_translation():
    # x' = cos t, y' = sin 2t integrate in closed form
    c = CoefficientSpec(sinusoid(1, 1, math.pi / 2), sinusoid(1, 2), sinusoid(0, 1))
    traj = integrate(EUC, c, (0, 0), 0.0, 2.0, 1e-3)
    assert traj.end == pytest.approx((math.sin(2.0), (1 - math.cos(4.0)) / 2), abs=1e-12)


def test_bad_arguments():
    c = CoefficientSpec.constants(1, 0, 0)
    with pytest.raises(ValueError):
        integrate(EUC, c, (0, 0), 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        integrate(EUC, c, (0, 0), 1.0, 1.0, 0.1)


def test_abort_near_chart_pole_carries_context():
    c = CoefficientSpec.constants(0, 1, 0)
    with pytest.raises(IntegrationAbort) as info:
        integrate(SPH, c, (0.3, math.pi / 2 - 1e-7), 0.0, 1.0, 1e-3)
    assert info.value.t == 0.0
    assert info.value.point == pytest.approx((0.3, math.pi / 2 - 1e-7))


def test_drift_examples():
    c = default_coefficients()
    assert flow_invariant_drift(EUC, c, (0.1, 0.2), (-0.3, 0.4), 0.0, 1.0, 1e-3) < 1e-6
    assert flow_invariant_drift(SPH, CoefficientSpec.constants(0, 0, 0), (0.1, 0.2), (0.5, 0.1), 0, 1, 0.1) == 0.0
    assert flow_invariant_drift(SPH, c, (0.1, 0.2), (0.1, 0.2), 0.0, 1.0, 1e-2) == 0.0


@pytest.mark.parametrize("name, kp", SPACES)
def test_two_point_invariant_conserved(name, kp):
    c = default_coefficients()
    a = integrate(kp, c, (0.1, 0.05), 0.0, 1.0, 1e-3)
    b = integrate(kp, c, (-0.3, -0.02), 0.0, 1.0, 1e-3)
    f = [f2_closed_form(kp, p, q) for p, q in zip(a.raw, b.raw)]
    assert max(abs(v - f[0]) for v in f) < 1e-10


def test_fourth_order_drift_on_curved_space():
    c = default_coefficients()
    drift = [flow_invariant_drift(SPH, c, (0.1, 0.2), (-0.3, 0.1), 0.0, 1.0, h) for h in (0.1, 0.05, 0.025)]
    for coarse, fine in zip(drift, drift[1:]):
        assert 12 < coarse / fine < 20


def test_csv_and_metadata(tmp_path):
    c = default_coefficients()
    traj = integrate(SPH, c, (0.1, 0.2), 0.0, 0.5, 0.1)
    csv_path, meta = traj.write(tmp_path / "run.csv")
    assert meta.name == "run.meta.yaml"
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "t,x,y" and len(lines) == len(traj) + 1
    back = Trajectory.read_csv(csv_path, SPH, c, 0.1)
    assert np.array_equal(back.raw, np.array(traj.points))  # %.17g round-trips exactly
    info = yaml.safe_load(meta.read_text())
    assert info["space"] == "sphere" and info["samples"] == len(traj)
    assert CoefficientSpec.from_dict(info["coefficients"]) == c


def test_points_are_normalized():
    traj = integrate(SPH, CoefficientSpec.constants(4, 0, 0), (0, 0), 0.0, 1.0, 1e-2)
    assert traj.raw[-1][0] == pytest.approx(4.0)
    assert traj.end.x == pytest.approx(4.0 - 2 * math.pi)
