"""Superposition rule: recover a third solution from two others and a triangle.

Three solutions of the same system stay the vertices of a congruent triangle,
so the side lengths ``s1 = d(q1, q2)``, ``s2 = d(q1, q3)``, ``s3 = d(q3, q2)``
and the area are constants of motion.  Given ``q2``, ``q3``, ``s1``, ``s2``
(and the area) the rule returns the two candidate positions of ``q1``, one
on each side of the geodesic through ``q2`` and ``q3``.
"""

import enum
import math
from dataclasses import dataclass

from .ck_space import (
    ParallelPoint,
    centering_element,
    chart_element,
    geodesic_distance,
    normalize,
    versed_distance,
)
from .errors import InversionError, TriangleDomainError
from .kappa_trig import atk, ck, period, sk, tk, vk, wrap

DEGENERATE_AREA = 1e-9
LHUILLIER_TOL = 1e-12


class Branch(enum.IntEnum):
    """Sign of the area terms; PLUS subtracts in the x relation and adds in the y relation."""

    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class TriangleInvariants:
    s1: float
    s2: float
    s3: float
    area: float

    @property
    def half_perimeter(self):
        return (self.s1 + self.s2 + self.s3) / 2

    @property
    def degenerate(self):
        return self.area < DEGENERATE_AREA


def cosine_factor(kp, s1, s2, s3):
    """(ck(s2) - ck(s1) ck(s3)) / kappa1 written with versed sines, finite at kappa1 = 0."""
    k1 = kp.kappa1
    v1, v3 = vk(k1, s1), vk(k1, s3)
    return v1 + v3 - vk(k1, s2) - k1 * v1 * v3


def half_side_product(kp, s1, s2, s3):
    k1 = kp.kappa1
    return ck(k1, s1 / 2) * ck(k1, s2 / 2) * ck(k1, s3 / 2)


def area_lhuillier(kp, s1, s2, s3, tol=LHUILLIER_TOL):
    """Triangle area from its three sides (requires kappa2 != 0)."""
    if kp.kappa2 == 0:
        raise ValueError("the side-length area formula needs kappa2 != 0; use area_newtonian")
    k1 = kp.kappa1
    p = (s1 + s2 + s3) / 2
    rhs = tk(k1, p / 2) * tk(k1, (p - s1) / 2) * tk(k1, (p - s2) / 2) * tk(k1, (p - s3) / 2)
    rhs /= kp.kappa2
    if rhs < 0:
        if -rhs > tol:
            raise TriangleDomainError(f"sides {(s1, s2, s3)} give tk^2(A/4) = {rhs!r} < 0")
        rhs = 0.0
    try:
        return 4 * atk(kp.k112, math.sqrt(rhs))
    except InversionError as exc:
        raise TriangleDomainError(f"sides {(s1, s2, s3)} exceed the area range: {exc}") from None


def _signed_diff(kp, a, b):
    d = a - b
    h = period(kp.kappa1)
    if h is not None:
        d = wrap(d, h)
    return d


def area_newtonian_signed(kp, q1, q2, q3):
    """Oriented area on a kappa2 = 0 space; positive when q1 lies to the left of q2 -> q3.

    The vertices are first moved so that ``q2`` is the origin.  When
    kappa1 != 0 that isometry is not a coordinate translation, and skipping
    it gives a value that is not conserved by the flow.
    """
    if kp.kappa2 != 0:
        raise ValueError("area_newtonian applies only to kappa2 = 0 spaces")
    k1 = kp.kappa1
    (a, y1), (c, y3) = recentre(kp, q2, [q1, q3])
    s1, s2, s3 = abs(a), abs(_signed_diff(kp, a, c)), abs(c)
    num = sk(k1, c) * y1 - sk(k1, a) * y3
    return num / (2 * half_side_product(kp, s1, s2, s3))


def area_newtonian(kp, q1, q2, q3):
    """Unsigned triangle area on a kappa2 = 0 space, from the vertex coordinates."""
    return abs(area_newtonian_signed(kp, q1, q2, q3))


def triangle_invariants(kp, q1, q2, q3):
    s1 = geodesic_distance(kp, q1, q2)
    s2 = geodesic_distance(kp, q1, q3)
    s3 = geodesic_distance(kp, q3, q2)
    if kp.kappa2 == 0:
        area = area_newtonian(kp, q1, q2, q3)
    else:
        area = area_lhuillier(kp, s1, s2, s3)
    return TriangleInvariants(s1, s2, s3, area)


def recentre(kp, q2, points):
    """Images of ``points`` under the isometry moving ``q2`` to the origin."""
    g = centering_element(kp, q2)
    return [g.act_parallel(p) for p in points]


def triangle_angles(kp, q1, q2, q3):
    """(ck(beta), sk(beta), ck(alpha), sk(alpha)) at the vertex q2, all with label kappa2.

    beta is the angle between the x-geodesic through q2 and the side q2 q3,
    alpha the inner angle at q2.  Both pairs satisfy ck^2 + kappa2 sk^2 = 1
    for a realizable triangle; the beta pair is taken in the frame where q2
    is the origin.
    """
    if kp.kappa2 == 0:
        raise ValueError("angles carry label kappa2 = 0; use the Newtonian construction")
    inv = triangle_invariants(kp, q1, q2, q3)
    k1 = kp.kappa1
    (x3, y3), = recentre(kp, q2, [q3])
    sk1, sk3 = sk(k1, inv.s1), sk(k1, inv.s3)
    cos_beta = tk(k1, x3) / tk(k1, inv.s3)
    sin_beta = sk(kp.k12, y3) / sk3
    cos_alpha = cosine_factor(kp, inv.s1, inv.s2, inv.s3) / (sk1 * sk3)
    sin_alpha = 4 * half_side_product(kp, inv.s1, inv.s2, inv.s3) * sk(kp.k112, inv.area / 2) / (sk1 * sk3)
    return cos_beta, sin_beta, cos_alpha, sin_alpha


def _x_candidates(k1, num, den):
    """All u in the chart with tk(k1, u) = num/den."""
    if k1 > 0:
        r = math.sqrt(k1)
        base = math.atan2(r * num, den) / r
        half = math.pi / r
        return [base, base - half if base > 0 else base + half]
    if den == 0:
        raise InversionError("x relation has a vanishing denominator")
    return [atk(k1, num / den)]


def _y_candidates(k12, value):
    if k12 > 0:
        r = math.sqrt(k12)
        w = r * value
        if abs(w) > 1:
            if abs(w) - 1 > 1e-9:
                raise InversionError(f"y relation: |sqrt(k12) sk| = {abs(w)!r} > 1")
            w = math.copysign(1.0, w)
        base = math.asin(w) / r
        return [base, math.copysign(math.pi / r, base) - base if base else math.pi / r]
    if k12 < 0:
        r = math.sqrt(-k12)
        return [math.asinh(r * value) / r]
    return [value]


def rule_values(kp, dx3, dy3, s1, s2, s3, area, sign, adapted=False):
    """Right-hand sides of the rule: (tk(k1, x1 - x2), sk(k12, y1 - y2)).

    The first value is returned as a (numerator, denominator) pair so the
    caller can invert it without dividing by a vanishing ck.  With
    ``adapted=True`` the offsets are taken relative to a point moved to the
    origin, where ck(k1, s3) = ck(k1, dx3) ck(k12, dy3); the product
    tk(k1, dx3) ck(k1, s3) is then formed without the tk pole.
    """
    k1, k2, k12 = kp.kappa1, kp.kappa2, kp.k12
    sk3 = sk(k1, s3)
    if sk3 == 0:
        raise TriangleDomainError("the two particular solutions coincide (s3 = 0)")
    f = cosine_factor(kp, s1, s2, s3)
    h = half_side_product(kp, s1, s2, s3) * sk(kp.k112, area / 2)
    cx3, sx3 = ck(k1, dx3), sk(k1, dx3)
    c3 = ck(k1, s3)
    sy3 = sk(k12, dy3)
    # tk(x1 - x2) = num/den, multiplied through by ck(dx3) to avoid its pole
    num = sx3 * f * c3 - sign * 4 * k2 * sy3 * h * cx3
    den = ck(k1, s1) * sk3 * sk3 * cx3
    t3c3 = sx3 * ck(k12, dy3) if adapted else tk(k1, dx3) * c3
    yval = (sy3 * f + sign * 4 * t3c3 * h) / (sk3 * sk3)
    return (num, den), yval


def _solve_relative(kp, dx3, dy3, s1, s2, s3, area, sign, adapted):
    """Candidate offsets (x1 - x2, y1 - y2) solving the two relations."""
    (num, den), yval = rule_values(kp, dx3, dy3, s1, s2, s3, area, sign, adapted)
    xs = _x_candidates(kp.kappa1, num, den)
    ys = _y_candidates(kp.k12, yval)
    return [(x, y) for x in xs for y in ys]


def _constraint_defect(kp, p, q2, q3, s1, s2):
    k1 = kp.kappa1
    return abs(versed_distance(kp, p, q2) - vk(k1, s1)) + abs(versed_distance(kp, p, q3) - vk(k1, s2))


def superpose(kp, q2, q3, s1, s2, branch=Branch.PLUS, area=None, frame="adapted"):
    """Position of the first solution from the other two and the frozen constants.

    ``area`` is required when kappa2 = 0 (it cannot be recovered from the
    sides there) and defaults to the side-length formula otherwise.  With
    ``frame="adapted"`` the relations are evaluated after an isometry moves
    ``q2`` to the origin; ``frame="literal"`` plugs the raw coordinate
    differences in directly, which is exact only when y2 = 0 or the space
    is flat in the x direction.
    """
    sign = int(Branch(branch))
    s3 = geodesic_distance(kp, q3, q2)
    if area is None:
        if kp.kappa2 == 0:
            raise ValueError("kappa2 = 0 needs an explicit area")
        area = area_lhuillier(kp, s1, s2, s3)

    if frame == "adapted":
        origin = ParallelPoint(0.0, 0.0)
        (x3, y3), = recentre(kp, q2, [q3])
        cands = _solve_relative(kp, x3, y3, s1, s2, s3, area, sign, True)
        best = min(cands, key=lambda c: _constraint_defect(kp, c, origin, (x3, y3), s1, s2))
        return chart_element(kp, q2).act_parallel(best)
    if frame == "literal":
        dx3, dy3 = q3[0] - q2[0], q3[1] - q2[1]
        cands = [
            normalize(kp, (q2[0] + a, q2[1] + b))
            for a, b in _solve_relative(kp, dx3, dy3, s1, s2, s3, area, sign, False)
        ]
        return min(cands, key=lambda c: _constraint_defect(kp, c, q2, q3, s1, s2))
    raise ValueError(f"frame must be 'adapted' or 'literal', got {frame!r}")


def superpose_both(kp, q2, q3, s1, s2, area=None, frame="adapted", strict=True):
    """Both branches as (PLUS, MINUS).

    With ``strict=False`` a branch whose point falls outside the parallel
    chart (possible on de Sitter space) is returned as None instead of
    raising :class:`InversionError`.
    """
    out = []
    for branch in (Branch.PLUS, Branch.MINUS):
        try:
            out.append(superpose(kp, q2, q3, s1, s2, branch, area, frame))
        except InversionError:
            if strict:
                raise
            out.append(None)
    return tuple(out)
