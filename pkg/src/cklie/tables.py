"""Hand-specialized closed forms for the nine canonical spaces.

Each entry spells out, with ordinary circular and hyperbolic functions, the
fields, Hamiltonians, area density, Casimir, two-point invariant and the two
relations of the superposition rule.  :func:`compare` evaluates them next to
the generic kappa-parametrized code on a fixed grid.
"""

import itertools
import math
from math import cos, cosh, sin, sinh, tan, tanh

from .ck_space import CANONICAL_SPACES, geodesic_distance
from .coalgebra import casimir, f2_closed_form
from .lie_hamilton import hamiltonian, symplectic_density, vector_field
from .superposition import area_lhuillier, area_newtonian, rule_values


def _flat_rule(k2):
    def rx(dx3, dy3, s1, s2, s3, a, sg):
        return dx3 * (s1**2 + s3**2 - s2**2) / (2 * s3**2) - sg * 2 * k2 * dy3 * a / s3**2

    def ry(dx3, dy3, s1, s2, s3, a, sg):
        return dy3 * (s1**2 + s3**2 - s2**2) / (2 * s3**2) + sg * 2 * dx3 * a / s3**2

    return rx, ry


def _hc(s1, s2, s3):
    return cos(s1 / 2) * cos(s2 / 2) * cos(s3 / 2)


def _hh(s1, s2, s3):
    return cosh(s1 / 2) * cosh(s2 / 2) * cosh(s3 / 2)


TABLES = {
    "sphere": {
        "X2": lambda x, y: (sin(x) * tan(y), cos(x)),
        "X3": lambda x, y: (cos(x) * tan(y), -sin(x)),
        "h1": lambda x, y: sin(y),
        "h2": lambda x, y: -sin(x) * cos(y),
        "h3": lambda x, y: 1 - cos(x) * cos(y),
        "omega": lambda x, y: cos(y),
        "casimir": (-0.5, -0.5, -0.5),
        "F2": lambda x1, y1, x2, y2: 1 - cos(x1 - x2) * cos(y1) * cos(y2) - sin(y1) * sin(y2),
        "rule_x": lambda dx3, dy3, s1, s2, s3, a, sg: (
            tan(dx3) * (cos(s2) - cos(s1) * cos(s3)) / (cos(s1) * sin(s3) * tan(s3))
            - sg * 4 * sin(dy3) * _hc(s1, s2, s3) * sin(a / 2) / (cos(s1) * sin(s3) ** 2)
        ),
        "rule_y": lambda dx3, dy3, s1, s2, s3, a, sg: (
            sin(dy3) * (cos(s2) - cos(s1) * cos(s3)) / sin(s3) ** 2
            + sg * 4 * tan(dx3) * _hc(s1, s2, s3) * sin(a / 2) / (sin(s3) * tan(s3))
        ),
    },
    "euclidean": {
        "X2": lambda x, y: (0.0, 1.0),
        "X3": lambda x, y: (y, -x),
        "h1": lambda x, y: y,
        "h2": lambda x, y: -x,
        "h3": lambda x, y: (x * x + y * y) / 2,
        "omega": lambda x, y: 1.0,
        "casimir": (-0.5, -0.5, 0.0),
        "F2": lambda x1, y1, x2, y2: ((x1 - x2) ** 2 + (y1 - y2) ** 2) / 2,
        "rule_x": _flat_rule(1)[0],
        "rule_y": _flat_rule(1)[1],
    },
    "hyperbolic": {
        "X2": lambda x, y: (-sinh(x) * tanh(y), cosh(x)),
        "X3": lambda x, y: (cosh(x) * tanh(y), -sinh(x)),
        "h1": lambda x, y: sinh(y),
        "h2": lambda x, y: -sinh(x) * cosh(y),
        "h3": lambda x, y: cosh(x) * cosh(y) - 1,
        "omega": lambda x, y: cosh(y),
        "casimir": (-0.5, -0.5, 0.5),
        "F2": lambda x1, y1, x2, y2: cosh(x1 - x2) * cosh(y1) * cosh(y2) - sinh(y1) * sinh(y2) - 1,
        "rule_x": lambda dx3, dy3, s1, s2, s3, a, sg: (
            tanh(dx3) * (cosh(s1) * cosh(s3) - cosh(s2)) / (cosh(s1) * sinh(s3) * tanh(s3))
            - sg * 4 * sinh(dy3) * _hh(s1, s2, s3) * sin(a / 2) / (cosh(s1) * sinh(s3) ** 2)
        ),
        "rule_y": lambda dx3, dy3, s1, s2, s3, a, sg: (
            sinh(dy3) * (cosh(s1) * cosh(s3) - cosh(s2)) / sinh(s3) ** 2
            + sg * 4 * tanh(dx3) * _hh(s1, s2, s3) * sin(a / 2) / (sinh(s3) * tanh(s3))
        ),
    },
    "oscillating_nh": {
        "X2": lambda x, y: (0.0, cos(x)),
        "X3": lambda x, y: (0.0, -sin(x)),
        "h1": lambda x, y: y,
        "h2": lambda x, y: -sin(x),
        "h3": lambda x, y: 1 - cos(x),
        "omega": lambda x, y: 1.0,
        "casimir": (0.0, -0.5, -0.5),
        "F2": lambda x1, y1, x2, y2: 1 - cos(x1 - x2),
        "rule_x": lambda dx3, dy3, s1, s2, s3, a, sg: (
            tan(dx3) * (cos(s2) - cos(s1) * cos(s3)) / (cos(s1) * sin(s3) * tan(s3))
        ),
        "rule_y": lambda dx3, dy3, s1, s2, s3, a, sg: (
            dy3 * (cos(s2) - cos(s1) * cos(s3)) / sin(s3) ** 2
            + sg * 2 * tan(dx3) * _hc(s1, s2, s3) * a / (sin(s3) * tan(s3))
        ),
    },
    "galilean": {
        "X2": lambda x, y: (0.0, 1.0),
        "X3": lambda x, y: (0.0, -x),
        "h1": lambda x, y: y,
        "h2": lambda x, y: -x,
        "h3": lambda x, y: x * x / 2,
        "omega": lambda x, y: 1.0,
        "casimir": (0.0, -0.5, 0.0),
        "F2": lambda x1, y1, x2, y2: (x1 - x2) ** 2 / 2,
        "rule_x": _flat_rule(0)[0],
        "rule_y": _flat_rule(0)[1],
    },
    "expanding_nh": {
        "X2": lambda x, y: (0.0, cosh(x)),
        "X3": lambda x, y: (0.0, -sinh(x)),
        "h1": lambda x, y: y,
        "h2": lambda x, y: -sinh(x),
        "h3": lambda x, y: cosh(x) - 1,
        "omega": lambda x, y: 1.0,
        "casimir": (0.0, -0.5, 0.5),
        "F2": lambda x1, y1, x2, y2: cosh(x1 - x2) - 1,
        "rule_x": lambda dx3, dy3, s1, s2, s3, a, sg: (
            tanh(dx3) * (cosh(s1) * cosh(s3) - cosh(s2)) / (cosh(s1) * sinh(s3) * tanh(s3))
        ),
        "rule_y": lambda dx3, dy3, s1, s2, s3, a, sg: (
            dy3 * (cosh(s1) * cosh(s3) - cosh(s2)) / sinh(s3) ** 2
            + sg * 2 * tanh(dx3) * _hh(s1, s2, s3) * a / (sinh(s3) * tanh(s3))
        ),
    },
    "anti_de_sitter": {
        "X2": lambda x, y: (-sin(x) * tanh(y), cos(x)),
        "X3": lambda x, y: (-cos(x) * tanh(y), -sin(x)),
        "h1": lambda x, y: sinh(y),
        "h2": lambda x, y: -sin(x) * cosh(y),
        "h3": lambda x, y: 1 - cos(x) * cosh(y),
        "omega": lambda x, y: cosh(y),
        "casimir": (0.5, -0.5, -0.5),
        "F2": lambda x1, y1, x2, y2: 1 - cos(x1 - x2) * cosh(y1) * cosh(y2) + sinh(y1) * sinh(y2),
        "rule_x": lambda dx3, dy3, s1, s2, s3, a, sg: (
            tan(dx3) * (cos(s2) - cos(s1) * cos(s3)) / (cos(s1) * sin(s3) * tan(s3))
            + sg * 4 * sinh(dy3) * _hc(s1, s2, s3) * sinh(a / 2) / (cos(s1) * sin(s3) ** 2)
        ),
        "rule_y": lambda dx3, dy3, s1, s2, s3, a, sg: (
            sinh(dy3) * (cos(s2) - cos(s1) * cos(s3)) / sin(s3) ** 2
            + sg * 4 * tan(dx3) * _hc(s1, s2, s3) * sinh(a / 2) / (sin(s3) * tan(s3))
        ),
    },
    "minkowski": {
        "X2": lambda x, y: (0.0, 1.0),
        "X3": lambda x, y: (-y, -x),
        "h1": lambda x, y: y,
        "h2": lambda x, y: -x,
        "h3": lambda x, y: (x * x - y * y) / 2,
        "omega": lambda x, y: 1.0,
        "casimir": (0.5, -0.5, 0.0),
        "F2": lambda x1, y1, x2, y2: ((x1 - x2) ** 2 - (y1 - y2) ** 2) / 2,
        "rule_x": _flat_rule(-1)[0],
        "rule_y": _flat_rule(-1)[1],
    },
    "de_sitter": {
        "X2": lambda x, y: (sinh(x) * tan(y), cosh(x)),
        "X3": lambda x, y: (-cosh(x) * tan(y), -sinh(x)),
        "h1": lambda x, y: sin(y),
        "h2": lambda x, y: -sinh(x) * cos(y),
        "h3": lambda x, y: cosh(x) * cos(y) - 1,
        "omega": lambda x, y: cos(y),
        "casimir": (0.5, -0.5, 0.5),
        "F2": lambda x1, y1, x2, y2: cosh(x1 - x2) * cos(y1) * cos(y2) + sin(y1) * sin(y2) - 1,
        "rule_x": lambda dx3, dy3, s1, s2, s3, a, sg: (
            tanh(dx3) * (cosh(s1) * cosh(s3) - cosh(s2)) / (cosh(s1) * sinh(s3) * tanh(s3))
            + sg * 4 * sin(dy3) * _hh(s1, s2, s3) * sinh(a / 2) / (cosh(s1) * sinh(s3) ** 2)
        ),
        "rule_y": lambda dx3, dy3, s1, s2, s3, a, sg: (
            sin(dy3) * (cosh(s1) * cosh(s3) - cosh(s2)) / sinh(s3) ** 2
            + sg * 4 * tanh(dx3) * _hh(s1, s2, s3) * sinh(a / 2) / (sinh(s3) * tanh(s3))
        ),
    },
}

GRID_X = (-0.9, -0.3, 0.0, 0.4, 1.1)
GRID_Y = (-0.7, -0.2, 0.0, math.pi / 6, 0.6)

#: point triples (q1, q2, q3) used to sample the superposition relations
TRIANGLES_SPACELIKE = (
    ((0.1, 0.2), (-0.3, 0.1), (0.25, -0.3)),
    ((0.5, -0.4), (0.2, 0.3), (-0.6, 0.1)),
    ((-0.2, 0.6), (0.7, 0.0), (0.3, -0.5)),
)
TRIANGLES_TIMELIKE = (
    ((-0.5, 0.02), (0.05, -0.05), (0.6, 0.04)),
    ((0.7, -0.08), (-0.55, 0.06), (0.1, 0.03)),
    ((0.05, 0.09), (0.65, -0.02), (-0.6, -0.07)),
)


def _casimir_coefficients(kp):
    c = casimir(kp)
    sq = {1: 0.0, 2: 0.0, 3: 0.0}
    for (exps,), coef in c.terms.items():
        for a in (1, 2, 3):
            if exps[a] == 2:
                sq[a] = float(coef)
    return sq[1], sq[2], sq[3]


def samples(name):
    """Rows (quantity, sample label, generic value, table value)."""
    kp = CANONICAL_SPACES[name]
    tab = TABLES[name]
    rows = []
    grid = list(itertools.product(GRID_X, GRID_Y))
    for x, y in grid:
        label = f"({x:.6g},{y:.6g})"
        for i in (2, 3):
            gen = vector_field(kp, i, (x, y))
            ref = tab[f"X{i}"](x, y)
            rows.append((f"X{i}.dx", label, gen.dx, ref[0]))
            rows.append((f"X{i}.dy", label, gen.dy, ref[1]))
        for i in (1, 2, 3):
            rows.append((f"h{i}", label, hamiltonian(kp, i, (x, y)), tab[f"h{i}"](x, y)))
        rows.append(("omega", label, symplectic_density(kp, (x, y)), tab["omega"](x, y)))
    for (p, q) in itertools.combinations(grid[::3], 2):
        label = f"({p[0]:.6g},{p[1]:.6g})|({q[0]:.6g},{q[1]:.6g})"
        rows.append(("F2", label, f2_closed_form(kp, p, q), tab["F2"](*p, *q)))
    for a, (gen, ref) in enumerate(zip(_casimir_coefficients(kp), tab["casimir"]), start=1):
        rows.append((f"casimir.v{a}^2", "-", gen, ref))

    triangles = TRIANGLES_TIMELIKE if kp.kappa2 < 0 else TRIANGLES_SPACELIKE
    for n, (q1, q2, q3) in enumerate(triangles):
        s1 = geodesic_distance(kp, q1, q2)
        s2 = geodesic_distance(kp, q1, q3)
        s3 = geodesic_distance(kp, q3, q2)
        area = area_newtonian(kp, q1, q2, q3) if kp.kappa2 == 0 else area_lhuillier(kp, s1, s2, s3)
        dx3, dy3 = q3[0] - q2[0], q3[1] - q2[1]
        for sg in (1, -1):
            (num, den), yval = rule_values(kp, dx3, dy3, s1, s2, s3, area, sg)
            args = (dx3, dy3, s1, s2, s3, area, sg)
            label = f"triangle{n}{'+' if sg > 0 else '-'}"
            rows.append(("rule_x", label, num / den, tab["rule_x"](*args)))
            rows.append(("rule_y", label, yval, tab["rule_y"](*args)))
    return rows


def compare(names=None):
    """{space: (rows, max abs discrepancy)} for the requested spaces."""
    out = {}
    for name in names or CANONICAL_SPACES:
        rows = samples(name)
        out[name] = (rows, max(abs(g - r) for _, _, g, r in rows))
    return out
