"""Poisson coalgebra over the extended Cayley-Klein algebra.

Polynomials in the generators v0..v3 (on one or two tensor slots) are stored
sparsely.  Coefficients may be any field-like numbers, so passing a
``KappaPair`` built from ``fractions.Fraction`` values gives exact
arithmetic, which is how centrality of the Casimir is certified.
"""

from dataclasses import dataclass

from .ck_space import geodesic_distance
from .kappa_trig import ck, vk
from .lie_hamilton import hamiltonian

N_GEN = 4


def _zero_exp():
    return (0,) * N_GEN


class PolyElement:
    """Sparse polynomial: {tuple of per-slot exponent tuples: coefficient}."""

    __slots__ = ("slots", "terms")

    def __init__(self, slots, terms=None):
        if slots not in (1, 2):
            raise ValueError(f"only 1 or 2 tensor slots are supported, got {slots}")
        self.slots = slots
        clean = {}
        for key, c in (terms or {}).items():
            if len(key) != slots or any(len(e) != N_GEN for e in key):
                raise ValueError(f"malformed monomial key {key!r}")
            if c != 0:
                clean[key] = clean.get(key, 0) + c
                if clean[key] == 0:
                    del clean[key]
        self.terms = clean

    @classmethod
    def const(cls, c, slots=1):
        return cls(slots, {(_zero_exp(),) * slots: c})

    @classmethod
    def gen(cls, a, slot=0, slots=1, coeff=1):
        key = [_zero_exp()] * slots
        e = [0] * N_GEN
        e[a] = 1
        key[slot] = tuple(e)
        return cls(slots, {tuple(key): coeff})

    def _check(self, other):
        if not isinstance(other, PolyElement):
            other = PolyElement.const(other, self.slots)
        if other.slots != self.slots:
            raise ValueError(f"slot-count mismatch: {self.slots} vs {other.slots}")
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return PolyElement(self.slots, terms)

    __radd__ = __add__

    def __neg__(self):
        return PolyElement(self.slots, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PolyElement):
            return PolyElement(self.slots, {k: c * other for k, c in self.terms.items()})
        other = self._check(other)
        terms = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(tuple(i + j for i, j in zip(ea, eb)) for ea, eb in zip(ka, kb))
                terms[key] = terms.get(key, 0) + ca * cb
        return PolyElement(self.slots, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = PolyElement.const(1, self.slots)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyElement):
            other = PolyElement.const(other, self.slots)
        return self.slots == other.slots and (self - other).is_zero()

    def __hash__(self):
        return hash((self.slots, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def derivative(self, slot, a):
        terms = {}
        for key, c in self.terms.items():
            e = key[slot][a]
            if e == 0:
                continue
            new = list(key)
            lowered = list(key[slot])
            lowered[a] -= 1
            new[slot] = tuple(lowered)
            terms[tuple(new)] = terms.get(tuple(new), 0) + c * e
        return PolyElement(self.slots, terms)

    def max_abs_coeff(self):
        return max((abs(c) for c in self.terms.values()), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            mono = []
            for s, e in enumerate(key):
                for a, n in enumerate(e):
                    if n:
                        name = f"v{a}" if self.slots == 1 else f"v{a}[{s + 1}]"
                        mono.append(name if n == 1 else f"{name}^{n}")
            parts.append(f"{c!r}*" + "*".join(mono) if mono else repr(c))
        return " + ".join(parts)


def generators(slots=1, slot=0):
    return tuple(PolyElement.gen(a, slot, slots) for a in range(N_GEN))


def _structure(kp, a, b, slots, slot):
    """{v_a, v_b} on one slot, as a polynomial."""
    v = generators(slots, slot)
    zero = PolyElement(slots)
    table = {
        (3, 1): -v[2],
        (3, 2): v[1] * kp.kappa2,
        (1, 2): v[0] - v[3] * kp.kappa1,
    }
    if (a, b) in table:
        return table[(a, b)]
    if (b, a) in table:
        return -table[(b, a)]
    return zero


def poly_poisson(kp, f, g):
    """Bracket from the structure constants, extended by Leibniz slot by slot."""
    if f.slots != g.slots:
        raise ValueError(f"slot-count mismatch: {f.slots} vs {g.slots}")
    out = PolyElement(f.slots)
    for s in range(f.slots):
        df = [f.derivative(s, a) for a in range(N_GEN)]
        dg = [g.derivative(s, b) for b in range(N_GEN)]
        for a in range(1, N_GEN):
            if df[a].is_zero():
                continue
            for b in range(1, N_GEN):
                if a == b or dg[b].is_zero():
                    continue
                out = out + df[a] * dg[b] * _structure(kp, a, b, f.slots, s)
    return out


def casimir(kp):
    """v3 v0 - (kappa2 v1^2 + v2^2 + kappa1 v3^2)/2."""
    v0, v1, v2, v3 = generators()
    half = (kp.kappa1 * 0 + 1) / 2  # Fraction kappa keeps the coefficients exact
    return v3 * v0 - (v1 * v1 * kp.kappa2 + v2 * v2 + v3 * v3 * kp.kappa1) * half


def coproduct(e):
    """Primitive coproduct: generators go to v (x) 1 + 1 (x) v, extended multiplicatively."""
    if e.slots != 1:
        raise ValueError("coproduct takes a single-slot element")
    images = [PolyElement.gen(a, 0, 2) + PolyElement.gen(a, 1, 2) for a in range(N_GEN)]
    out = PolyElement(2)
    for (exps,), c in e.terms.items():
        term = PolyElement.const(c, 2)
        for a, n in enumerate(exps):
            if n:
                term = term * images[a] ** n
        out = out + term
    return out


def realize(kp, e):
    """Scalar field on e.slots-tuples of chart points, v_a in slot j -> h_a(p_j)."""

    def field(*points):
        if len(points) != e.slots:
            raise ValueError(f"expected {e.slots} points, got {len(points)}")
        hs = [[hamiltonian(kp, a, p) for a in range(N_GEN)] for p in points]
        total = 0.0
        for key, c in e.terms.items():
            term = float(c)
            for s, exps in enumerate(key):
                for a, n in enumerate(exps):
                    if n:
                        term *= hs[s][a] ** n
            total += term
        return total

    return field


def f2_closed_form(kp, p1, p2):
    """Two-point invariant in versed-sine form; equals vk(kappa1, distance)."""
    (xa, ya), (xb, yb) = p1, p2
    k1, k12 = kp.kappa1, kp.k12
    return vk(k1, xa - xb) * ck(k12, ya) * ck(k12, yb) + kp.kappa2 * vk(k12, ya - yb)


def f2_permuted(kp, which, p1, p2, p3):
    """Three-point variants: 13 pairs (p3, p2), 23 pairs (p1, p3)."""
    if which == 13:
        return f2_closed_form(kp, p3, p2)
    if which == 23:
        return f2_closed_form(kp, p1, p3)
    raise ValueError(f"which must be 13 or 23, got {which!r}")


@dataclass(frozen=True)
class InvariantFn:
    """Named constant of motion evaluated on tuples of chart points.

    ``tag`` is one of ``"F"`` (one copy, identically zero), ``"F2"``,
    ``"F2_13"``, ``"F2_23"``.
    """

    kp: object
    tag: str

    @property
    def copies(self):
        return {"F": 1, "F2": 2, "F2_13": 3, "F2_23": 3}[self.tag]

    def __call__(self, *points):
        if len(points) != self.copies:
            raise ValueError(f"{self.tag} takes {self.copies} points, got {len(points)}")
        if self.tag == "F":
            return realize(self.kp, casimir(self.kp))(*points)
        if self.tag == "F2":
            return f2_closed_form(self.kp, *points)
        return f2_permuted(self.kp, int(self.tag[-2:]), *points)

    def side_length(self, *points):
        """The geodesic distance whose versed sine this invariant is."""
        if self.tag == "F":
            raise ValueError("the one-copy invariant has no associated side")
        pairs = {"F2": (0, 1), "F2_13": (2, 1), "F2_23": (0, 2)}
        i, j = pairs[self.tag]
        return geodesic_distance(self.kp, points[i], points[j])
