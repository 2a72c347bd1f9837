import math

import pytest

from cklie.ck_space import CANONICAL_SPACES
from cklie.tables import TABLES, compare, samples


def _row(rows, quantity, label):
    return next(r for r in rows if r[0] == quantity and r[1] == label)


def test_every_space_has_a_table():
    assert set(TABLES) == set(CANONICAL_SPACES)


@pytest.mark.parametrize("name", list(CANONICAL_SPACES))
def test_generic_matches_hand_specialized(name):
    rows, worst = compare([name])[name]
    assert len(rows) > 100
    assert worst < 1e-12


def test_sphere_h1_at_pi_over_six():
    rows = samples("sphere")
    label = f"({0.0:.6g},{math.pi / 6:.6g})"
    _, _, generic, table = _row(rows, "h1", label)
    assert generic == pytest.approx(0.5, abs=1e-15) and table == pytest.approx(0.5, abs=1e-15)


def test_galilean_rotation_field():
    for q, label, generic, table in samples("galilean"):
        if q.startswith("X3"):
            x = float(label[1:-1].split(",")[0])
            expected = 0.0 if q.endswith("dx") else -x
            assert generic == pytest.approx(expected, abs=1e-15)
            assert table == pytest.approx(expected, abs=1e-15)


def test_minkowski_two_point_invariant():
    for q, label, generic, table in samples("minkowski"):
        if q == "F2":
            (x1, y1), (x2, y2) = [tuple(map(float, part[1:-1].split(","))) for part in label.split("|")]
            expected = 0.5 * ((x1 - x2) ** 2 - (y1 - y2) ** 2)
            assert generic == pytest.approx(expected, abs=1e-5)  # labels carry 6 significant digits
            assert generic == pytest.approx(table, abs=1e-15)
