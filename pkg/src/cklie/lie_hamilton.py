"""Vector fields, Hamiltonians and brackets of the Lie-Hamilton system.

On every Cayley-Klein space the three fields

    X1 = d/dx
    X2 = k12 sk1(x) tk12(y) d/dx + ck1(x) d/dy
    X3 = k2 ck1(x) tk12(y) d/dx - sk1(x) d/dy

close under the Lie bracket and are Hamiltonian for the area form
``ck12(y) dx^dy``.  Here ``k1, k12`` abbreviate ``kappa1, kappa1*kappa2``.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ChartSingularityError
from .kappa_trig import POLE_FLOOR, ck, sk, tk, vk

FD_STEP_BRACKET = 1e-5
FD_STEP_POISSON = 1e-6


class VectorValue(NamedTuple):
    dx: float
    dy: float


# -- time-dependent coefficients ---------------------------------------------

_KINDS = {
    "constant": ("c",),
    "sinusoid": ("a", "omega", "phi"),
    "polynomial": ("coeffs",),
    "exponential": ("a", "lam"),
}


@dataclass(frozen=True)
class TimeFunction:
    """One entry of the coefficient catalog.

    ``polynomial`` takes ``coeffs`` in increasing degree, at most four.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown time-function kind {self.kind!r}; expected one of {sorted(_KINDS)}")
        expected = set(_KINDS[self.kind])
        got = set(self.params)
        if got != expected:
            raise ValueError(f"{self.kind} needs parameters {sorted(expected)}, got {sorted(got)}")
        if self.kind == "polynomial":
            coeffs = tuple(float(c) for c in self.params["coeffs"])
            if not 1 <= len(coeffs) <= 4:
                raise ValueError("polynomial coefficients must have length 1 to 4 (degree <= 3)")
            object.__setattr__(self, "params", {"coeffs": coeffs})
        else:
            object.__setattr__(self, "params", {k: float(v) for k, v in self.params.items()})

    def __hash__(self):
        return hash((self.kind, tuple(sorted(self.params.items()))))

    def __call__(self, t):
        p = self.params
        if self.kind == "constant":
            return p["c"]
        if self.kind == "sinusoid":
            return p["a"] * math.sin(p["omega"] * t + p["phi"])
        if self.kind == "polynomial":
            acc = 0.0
            for c in reversed(p["coeffs"]):
                acc = acc * t + c
            return acc
        return p["a"] * math.exp(p["lam"] * t)

    def to_dict(self):
        out = {"kind": self.kind}
        for k, v in self.params.items():
            out[k] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        kind = d.pop("kind")
        return cls(kind, d)


def constant(c):
    return TimeFunction("constant", {"c": c})


def sinusoid(a, omega, phi=0.0):
    return TimeFunction("sinusoid", {"a": a, "omega": omega, "phi": phi})


def polynomial(*coeffs):
    return TimeFunction("polynomial", {"coeffs": coeffs})


def exponential(a, lam):
    return TimeFunction("exponential", {"a": a, "lam": lam})


@dataclass(frozen=True)
class CoefficientSpec:
    b1: TimeFunction
    b2: TimeFunction
    b3: TimeFunction

    def __call__(self, t):
        return self.b1(t), self.b2(t), self.b3(t)

    def to_dict(self):
        return {"b1": self.b1.to_dict(), "b2": self.b2.to_dict(), "b3": self.b3.to_dict()}

    @classmethod
    def from_dict(cls, d):
        return cls(*(TimeFunction.from_dict(d[k]) for k in ("b1", "b2", "b3")))

    @classmethod
    def constants(cls, b1, b2, b3):
        return cls(constant(b1), constant(b2), constant(b3))


# -- fields and system ---------------------------------------------------------

def vector_field(kp, i, p):
    x, y = p
    k1, k12 = kp.kappa1, kp.k12
    if i == 1:
        return VectorValue(1.0, 0.0)
    if i == 2:
        return VectorValue(k12 * sk(k1, x) * tk(k12, y), ck(k1, x))
    if i == 3:
        return VectorValue(kp.kappa2 * ck(k1, x) * tk(k12, y), -sk(k1, x))
    raise ValueError(f"vector field index must be 1, 2 or 3, got {i!r}")


def system_rhs(kp, c, t, p):
    """b1(t) X1 + b2(t) X2 + b3(t) X3 at ``p``."""
    x, y = p
    b1, b2, b3 = c(t)
    k1, k12 = kp.kappa1, kp.k12
    s1, c1 = sk(k1, x), ck(k1, x)
    ty = tk(k12, y)
    return VectorValue(b1 + (b2 * k12 * s1 + b3 * kp.kappa2 * c1) * ty, b2 * c1 - b3 * s1)


# -- symplectic structure ------------------------------------------------------

def symplectic_density(kp, p):
    """Coefficient of dx^dy in the invariant area form."""
    return ck(kp.k12, p[1])


def hamiltonian(kp, i, p):
    x, y = p
    k1, k12 = kp.kappa1, kp.k12
    if i == 0:
        return 1.0
    if i == 1:
        return sk(k12, y)
    if i == 2:
        return -sk(k1, x) * ck(k12, y)
    if i == 3:
        v1, v12 = vk(k1, x), vk(k12, y)
        return v1 + kp.kappa2 * v12 - k1 * kp.kappa2 * v1 * v12
    raise ValueError(f"hamiltonian index must be 0..3, got {i!r}")


def hamiltonian_gradient(kp, i, p):
    """Analytic (dh/dx, dh/dy)."""
    x, y = p
    k1, k12 = kp.kappa1, kp.k12
    if i == 0:
        return 0.0, 0.0
    if i == 1:
        return 0.0, ck(k12, y)
    if i == 2:
        return -ck(k1, x) * ck(k12, y), k12 * sk(k1, x) * sk(k12, y)
    if i == 3:
        return (
            sk(k1, x) * (1 - k12 * vk(k12, y)),
            kp.kappa2 * sk(k12, y) * (1 - k1 * vk(k1, x)),
        )
    raise ValueError(f"hamiltonian index must be 0..3, got {i!r}")


def hamiltonian_residual(kp, i, p):
    """Components of i_X omega - dh; zero when X_i is the Hamiltonian field of h_i."""
    v = vector_field(kp, i, p)
    w = symplectic_density(kp, p)
    hx, hy = hamiltonian_gradient(kp, i, p)
    return -w * v.dy - hx, w * v.dx - hy


def _gradient(kp, f, p, h):
    if isinstance(f, (int, np.integer)):
        return hamiltonian_gradient(kp, int(f), p)
    x, y = p
    return (
        (f((x + h, y)) - f((x - h, y))) / (2 * h),
        (f((x, y + h)) - f((x, y - h))) / (2 * h),
    )


def poisson_bracket(kp, f, g, p, step=FD_STEP_POISSON):
    """Bracket induced by the area form.

    ``f`` and ``g`` are either Hamiltonian indices 0..3 (analytic partials)
    or callables on chart points (central differences).
    """
    w = symplectic_density(kp, p)
    if abs(w) < POLE_FLOOR:
        raise ChartSingularityError(f"symplectic density vanishes at {tuple(p)}")
    fx, fy = _gradient(kp, f, p, step)
    gx, gy = _gradient(kp, g, p, step)
    return (fx * gy - fy * gx) / w


def field_jacobian(kp, i, p, step=FD_STEP_BRACKET):
    x, y = p
    jac = np.empty((2, 2))
    fxp, fxm = vector_field(kp, i, (x + step, y)), vector_field(kp, i, (x - step, y))
    fyp, fym = vector_field(kp, i, (x, y + step)), vector_field(kp, i, (x, y - step))
    jac[:, 0] = (np.array(fxp) - np.array(fxm)) / (2 * step)
    jac[:, 1] = (np.array(fyp) - np.array(fym)) / (2 * step)
    return jac


def lie_bracket_numeric(kp, i, j, p, step=FD_STEP_BRACKET):
    """[X_i, X_j](p) = DX_j X_i - DX_i X_j from finite-difference Jacobians."""
    xi = np.array(vector_field(kp, i, p))
    xj = np.array(vector_field(kp, j, p))
    out = field_jacobian(kp, j, p, step) @ xi - field_jacobian(kp, i, p, step) @ xj
    return VectorValue(float(out[0]), float(out[1]))


def bracket_prediction(kp, i, j, p):
    """Structure-constant value of [X_i, X_j] at ``p``."""
    table = {
        (3, 1): {2: 1.0},
        (3, 2): {1: -kp.kappa2},
        (1, 2): {3: kp.kappa1},
    }
    sign = 1.0
    if (i, j) not in table and (j, i) in table:
        i, j, sign = j, i, -1.0
    terms = table.get((i, j), {})
    dx = dy = 0.0
    for k, coef in terms.items():
        v = vector_field(kp, k, p)
        dx += sign * coef * v.dx
        dy += sign * coef * v.dy
    return VectorValue(dx, dy)


def poisson_prediction(kp, i, j, p):
    """Value of {h_i, h_j} from the extended bracket table."""
    if i == j or i == 0 or j == 0:
        return 0.0
    table = {
        (3, 1): lambda: -hamiltonian(kp, 2, p),
        (3, 2): lambda: kp.kappa2 * hamiltonian(kp, 1, p),
        (1, 2): lambda: 1.0 - kp.kappa1 * hamiltonian(kp, 3, p),
    }
    if (i, j) in table:
        return table[(i, j)]()
    return -table[(j, i)]()
