"""Curvature-labelled trigonometric functions.

``ck``, ``sk``, ``tk`` and ``vk`` interpolate circular (kappa > 0), parabolic
(kappa = 0) and hyperbolic (kappa < 0) trigonometry.  Near ``kappa * u**2 = 0``
they are evaluated from their power series, so every function is continuous in
kappa and ``vk`` never forms ``0/0``.
"""

import math

from .errors import ChartSingularityError, InversionError

#: below this value of |kappa * u**2| the truncated series is used
SERIES_THRESHOLD = 1e-4
#: |ck| below this makes ``tk`` raise
POLE_FLOOR = 1e-12


def ck(kappa, u):
    """kappa-cosine: cos(sqrt(k) u), 1, or cosh(sqrt(-k) u)."""
    z = kappa * u * u
    if abs(z) < SERIES_THRESHOLD:
        return 1.0 - z / 2 * (1 - z / 12 * (1 - z / 30 * (1 - z / 56 * (1 - z / 90))))
    if kappa > 0:
        return math.cos(math.sqrt(kappa) * u)
    return math.cosh(math.sqrt(-kappa) * u)


def sk(kappa, u):
    """kappa-sine: sin(sqrt(k) u)/sqrt(k), u, or sinh(sqrt(-k) u)/sqrt(-k)."""
    z = kappa * u * u
    if abs(z) < SERIES_THRESHOLD:
        return u * (1 - z / 6 * (1 - z / 20 * (1 - z / 42 * (1 - z / 72))))
    if kappa > 0:
        r = math.sqrt(kappa)
        return math.sin(r * u) / r
    r = math.sqrt(-kappa)
    return math.sinh(r * u) / r


def tk(kappa, u, floor=POLE_FLOOR):
    """kappa-tangent ``sk/ck``; raises :class:`ChartSingularityError` at a pole."""
    c = ck(kappa, u)
    if abs(c) < floor:
        raise ChartSingularityError(f"tk pole: ck({kappa!r}, {u!r}) = {c!r}")
    return sk(kappa, u) / c


def vk(kappa, u):
    """kappa-versed sine ``(1 - ck)/kappa``, equal to u**2/2 at kappa = 0."""
    z = kappa * u * u
    if abs(z) < SERIES_THRESHOLD:
        return u * u / 2 * (1 - z / 12 * (1 - z / 30 * (1 - z / 56 * (1 - z / 90))))
    # half-angle form, no cancellation in 1 - cos
    if kappa > 0:
        h = math.sin(math.sqrt(kappa) * u / 2)
        return 2 * h * h / kappa
    h = math.sinh(math.sqrt(-kappa) * u / 2)
    return -2 * h * h / kappa


# derivatives in u

def dck(kappa, u):
    return -kappa * sk(kappa, u)


def dsk(kappa, u):
    return ck(kappa, u)


def dtk(kappa, u, floor=POLE_FLOOR):
    c = ck(kappa, u)
    if abs(c) < floor:
        raise ChartSingularityError(f"tk pole: ck({kappa!r}, {u!r}) = {c!r}")
    return 1.0 / (c * c)


def dvk(kappa, u):
    return sk(kappa, u)


# addition formulas

def ck_add(kappa, u, v, sign=1):
    """``ck(kappa, u + sign*v)`` expanded by the addition formula."""
    return ck(kappa, u) * ck(kappa, v) - sign * kappa * sk(kappa, u) * sk(kappa, v)


def sk_add(kappa, u, v, sign=1):
    """``sk(kappa, u + sign*v)`` expanded by the addition formula."""
    return sk(kappa, u) * ck(kappa, v) + sign * ck(kappa, u) * sk(kappa, v)


# principal inverses

def atk(kappa, t):
    """Principal inverse of ``tk``: the u with tk(kappa, u) = t nearest zero."""
    z = kappa * t * t
    if abs(z) < SERIES_THRESHOLD:
        return t * (1 - z / 3 + z * z / 5 - z**3 / 7)
    if kappa > 0:
        r = math.sqrt(kappa)
        return math.atan(r * t) / r
    if kappa < 0:
        r = math.sqrt(-kappa)
        w = r * t
        if abs(w) >= 1:
            raise InversionError(f"atk: |sqrt(-kappa) t| = {abs(w)!r} >= 1")
        return math.atanh(w) / r
    return t


def ask(kappa, s, tol=1e-9):
    """Principal inverse of ``sk``.

    For kappa > 0 arguments overshooting the range by at most ``tol`` are
    clamped to the endpoint.
    """
    z = kappa * s * s
    if abs(z) < SERIES_THRESHOLD:
        return s * (1 + z / 6 + 3 * z * z / 40 + 5 * z**3 / 112)
    if kappa > 0:
        r = math.sqrt(kappa)
        w = r * s
        if abs(w) > 1:
            if abs(w) - 1 > tol:
                raise InversionError(f"ask: |sqrt(kappa) s| = {abs(w)!r} > 1")
            w = math.copysign(1.0, w)
        return math.asin(w) / r
    if kappa < 0:
        r = math.sqrt(-kappa)
        return math.asinh(r * s) / r
    return s


def avk(kappa, v, tol=1e-9):
    """Minimal nonnegative u with vk(kappa, u) = v.

    Small negative ``v`` (and, for kappa > 0, small overshoot past the
    antipodal value 2/kappa) within ``tol`` are clamped.
    """
    if v < 0:
        if -v > tol:
            raise InversionError(f"avk: negative versed sine {v!r}")
        return 0.0
    z = kappa * v / 2
    if abs(z) < SERIES_THRESHOLD:
        return math.sqrt(2 * v) * (1 + z / 6 + 3 * z * z / 40 + 5 * z**3 / 112)
    if kappa > 0:
        w = z
        if w > 1:
            if w - 1 > tol:
                raise InversionError(f"avk: kappa*v/2 = {w!r} > 1")
            w = 1.0
        r = math.sqrt(kappa)
        return 2 * math.asin(math.sqrt(w)) / r
    if kappa < 0:
        r = math.sqrt(-kappa)
        return 2 * math.asinh(math.sqrt(-kappa * v / 2)) / r
    return math.sqrt(2 * v)


def period(kappa):
    """Half-period pi/sqrt(kappa) of the circular case, None otherwise."""
    if kappa > 0:
        return math.pi / math.sqrt(kappa)
    return None


def wrap(u, half):
    """Reduce ``u`` into (-half, half]."""
    r = math.remainder(u, 2 * half)
    if r <= -half:
        r += 2 * half
    return r
