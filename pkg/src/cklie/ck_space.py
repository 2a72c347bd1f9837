"""The nine two-dimensional Cayley-Klein spaces.

A space is fixed by a :class:`KappaPair`: ``kappa1`` is the constant Gaussian
curvature and ``kappa2`` the signature parameter of the metric
``diag(+1, kappa2)``.  Points are normally handled in geodesic parallel
coordinates ``(x, y)``; the ambient (Weierstrass) coordinates live on the
quadric ``x0**2 + kappa1*x1**2 + kappa1*kappa2*x2**2 = 1``.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import OffManifoldError, OutOfComponentError
from .kappa_trig import avk, ck, period, sk, vk, wrap

#: isometry / constraint tolerance for group elements and ambient points
MANIFOLD_TOL = 1e-10


@dataclass(frozen=True)
class KappaPair:
    kappa1: float
    kappa2: float

    @property
    def k12(self):
        """kappa1 * kappa2, the label of the y-direction trig functions."""
        return self.kappa1 * self.kappa2

    @property
    def k112(self):
        """kappa1**2 * kappa2, the label used for triangle areas."""
        return self.kappa1 * self.kappa1 * self.kappa2

    @property
    def metric_matrix(self):
        return np.diag([1.0, float(self.kappa1), float(self.k12)])

    @property
    def name(self):
        for key, kp in CANONICAL_SPACES.items():
            if kp == self:
                return key
        return f"kappa({self.kappa1!r},{self.kappa2!r})"

    def __str__(self):
        return self.name


CANONICAL_SPACES = {
    "sphere": KappaPair(1.0, 1.0),
    "euclidean": KappaPair(0.0, 1.0),
    "hyperbolic": KappaPair(-1.0, 1.0),
    "oscillating_nh": KappaPair(1.0, 0.0),
    "galilean": KappaPair(0.0, 0.0),
    "expanding_nh": KappaPair(-1.0, 0.0),
    "anti_de_sitter": KappaPair(1.0, -1.0),
    "minkowski": KappaPair(0.0, -1.0),
    "de_sitter": KappaPair(-1.0, -1.0),
}


def space(name_or_pair):
    """Resolve a canonical space name, a KappaPair or a (kappa1, kappa2) pair."""
    if isinstance(name_or_pair, KappaPair):
        return name_or_pair
    if isinstance(name_or_pair, str):
        try:
            return CANONICAL_SPACES[name_or_pair]
        except KeyError:
            raise ValueError(
                f"unknown space {name_or_pair!r}; expected one of {sorted(CANONICAL_SPACES)}"
            ) from None
    k1, k2 = name_or_pair
    return KappaPair(float(k1), float(k2))


class ParallelPoint(NamedTuple):
    x: float
    y: float


class AmbientPoint(NamedTuple):
    x0: float
    x1: float
    x2: float


class PolarPoint(NamedTuple):
    r: float
    phi: float


def constraint_defect(kp, a):
    """Residual of the quadric constraint at an ambient point."""
    x0, x1, x2 = a
    return x0 * x0 + kp.kappa1 * x1 * x1 + kp.k12 * x2 * x2 - 1.0


def normalize(kp, p):
    """Reduce compact chart coordinates into their principal intervals.

    x goes to (-pi/sqrt(k1), pi/sqrt(k1)] when kappa1 > 0.  When both
    kappa1 and kappa1*kappa2 are positive, y is folded into
    [-pi/(2 sqrt(k12)), pi/(2 sqrt(k12))] by the chart identity
    (x, y) ~ (x + pi/sqrt(k1), pi/sqrt(k12) - y); when only kappa1*kappa2
    is positive y goes to (-pi/sqrt(k12), pi/sqrt(k12)].
    """
    x, y = float(p[0]), float(p[1])
    hx = period(kp.kappa1)
    hy = period(kp.k12)
    if hy is not None:
        y = wrap(y, hy)
        if hx is not None and abs(y) > hy / 2:
            y = math.copysign(hy, y) - y
            x += hx
    if hx is not None:
        x = wrap(x, hx)
    return ParallelPoint(x, y)


def parallel_to_ambient(kp, p):
    x, y = p
    cy = ck(kp.k12, y)
    return AmbientPoint(ck(kp.kappa1, x) * cy, sk(kp.kappa1, x) * cy, sk(kp.k12, y))


def ambient_to_parallel(kp, a, tol=1e-9):
    """Invert :func:`parallel_to_ambient` on the component of the origin.

    On the sphere the chart is x in (-pi, pi], y in [-pi/2, pi/2].  On de
    Sitter space the whole one-sheeted quadric is reached, with y in
    (-pi, pi].  Elsewhere with kappa1 <= 0 the point must have x0 > 0.
    """
    x0, x1, x2 = a
    k1, k12 = kp.kappa1, kp.k12
    defect = constraint_defect(kp, a)
    if abs(defect) > tol:
        raise OffManifoldError(f"ambient point {tuple(a)} violates the constraint by {defect:.3e}")

    cy2 = 1.0 - k12 * x2 * x2
    cy = math.sqrt(max(cy2, 0.0))
    if k1 < 0 < k12 and x0 < 0:
        cy = -cy
    elif k1 <= 0 and x0 <= 0:
        raise OutOfComponentError(f"x0 = {x0!r} is not on the sheet containing the origin")

    if k12 > 0:
        r = math.sqrt(k12)
        y = math.atan2(r * x2, cy) / r
    elif k12 < 0:
        r = math.sqrt(-k12)
        y = math.asinh(r * x2) / r
    else:
        y = x2

    if k1 > 0:
        r = math.sqrt(k1)
        if abs(x0) < 1e-12 and abs(x1) < 1e-12:
            x = 0.0  # pole of the chart, x is arbitrary
        else:
            x = math.atan2(r * x1, x0) / r
    elif abs(cy) < 1e-12:
        x = 0.0
    elif k1 < 0:
        r = math.sqrt(-k1)
        x = math.asinh(r * x1 / cy) / r
    else:
        x = x1 / cy
    return normalize(kp, (x, y))


def polar_to_ambient(kp, q):
    r, phi = q
    s = sk(kp.kappa1, r)
    return AmbientPoint(ck(kp.kappa1, r), s * ck(kp.kappa2, phi), s * sk(kp.kappa2, phi))


def polar_to_parallel(kp, q):
    return ambient_to_parallel(kp, polar_to_ambient(kp, q))


def metric_coefficients(kp, p):
    """(g_xx, g_yy) of ds^2 = ck(k12, y)^2 dx^2 + kappa2 dy^2.

    For kappa2 = 0 the metric is degenerate and g_yy = 0; the leaves
    x = const then carry the subsidiary metric dy^2.
    """
    c = ck(kp.k12, p[1])
    return c * c, float(kp.kappa2)


def versed_distance(kp, p1, p2):
    """vk(kappa1, s) for the geodesic distance s between two points.

    Evaluated in the versed-sine form, so it is exact at kappa1 = 0 and
    free of cancellation for nearby points.
    """
    (xa, ya), (xb, yb) = p1, p2
    k1, k12 = kp.kappa1, kp.k12
    return vk(k1, xa - xb) * ck(k12, ya) * ck(k12, yb) + kp.kappa2 * vk(k12, ya - yb)


def geodesic_distance(kp, p1, p2, tol=1e-9):
    """Minimal nonnegative s with ck(kappa1, s) given by the law of cosines.

    Raises :class:`OffManifoldError` when the cosine leaves the range of ck
    by more than ``tol`` (e.g. space-like pairs in a Lorentzian space).
    """
    v = versed_distance(kp, p1, p2)
    k1 = kp.kappa1
    if v < 0:
        if -v > tol:
            raise OffManifoldError(f"no real geodesic distance: vk(s) = {v!r}")
        return 0.0
    if k1 > 0 and k1 * v > 2:
        if k1 * v - 2 > tol:
            raise OffManifoldError(f"no real geodesic distance: ck(s) = {1 - k1 * v!r}")
        return math.pi / math.sqrt(k1)
    return avk(k1, v)


# -- group realization -------------------------------------------------------

GENERATORS = ("P1", "P2", "J12")


def _e(i, j):
    m = np.zeros((3, 3))
    m[i, j] = 1.0
    return m


def generator_matrices(kp):
    """Matrices of P1, P2, J12 preserving the form diag(1, kappa1, kappa1*kappa2)."""
    k1, k2 = float(kp.kappa1), float(kp.kappa2)
    p1 = -k1 * _e(0, 1) + _e(1, 0)
    p2 = -k1 * k2 * _e(0, 2) + _e(2, 0)
    j12 = -k2 * _e(1, 2) + _e(2, 1)
    return p1, p2, j12


def commutator(a, b):
    return a @ b - b @ a


@dataclass(frozen=True, eq=False)
class GroupElement:
    kp: KappaPair
    m: np.ndarray

    def __matmul__(self, other):
        if isinstance(other, GroupElement):
            return GroupElement(self.kp, self.m @ other.m)
        return NotImplemented

    def inverse(self):
        # g^-1 = I^-1 g^T I is singular for contracted spaces, use the LU inverse
        return GroupElement(self.kp, np.linalg.inv(self.m))

    def act(self, a):
        """Apply to an ambient point."""
        return AmbientPoint(*(float(v) for v in self.m @ np.asarray(a, dtype=float)))

    def act_parallel(self, p):
        """Apply to a point given in parallel coordinates."""
        return ambient_to_parallel(self.kp, self.act(parallel_to_ambient(self.kp, p)))

    def isometry_defect(self):
        ik = self.kp.metric_matrix
        return float(np.max(np.abs(self.m.T @ ik @ self.m - ik)))


def identity(kp):
    return GroupElement(kp, np.eye(3))


def subgroup_exp(kp, generator, param):
    """Closed-form one-parameter subgroup exp(param * generator)."""
    k1, k2, k12 = kp.kappa1, kp.kappa2, kp.k12
    m = np.eye(3)
    if generator == "P1":
        c, s = ck(k1, param), sk(k1, param)
        m[0, 0], m[0, 1], m[1, 0], m[1, 1] = c, -k1 * s, s, c
    elif generator == "P2":
        c, s = ck(k12, param), sk(k12, param)
        m[0, 0], m[0, 2], m[2, 0], m[2, 2] = c, -k12 * s, s, c
    elif generator == "J12":
        c, s = ck(k2, param), sk(k2, param)
        m[1, 1], m[1, 2], m[2, 1], m[2, 2] = c, -k2 * s, s, c
    else:
        raise ValueError(f"unknown generator {generator!r}; expected one of {GENERATORS}")
    return GroupElement(kp, m)


def chart_element(kp, p):
    """Group element exp(x P1) exp(y P2) carrying the origin to ``p``."""
    x, y = p
    return subgroup_exp(kp, "P1", x) @ subgroup_exp(kp, "P2", y)


def centering_element(kp, p):
    """Isometry carrying ``p`` to the origin, inverse of :func:`chart_element`."""
    x, y = p
    return subgroup_exp(kp, "P2", -y) @ subgroup_exp(kp, "P1", -x)
