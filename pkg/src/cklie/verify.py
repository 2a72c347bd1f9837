"""Invariant suites behind ``cklie verify`` and the acceptance tests.

Each suite returns a :class:`SuiteResult` holding the worst residual seen
and the tolerance it was judged against.  Random samples come from a
generator seeded by ``(seed, suite, space)`` so results do not depend on
the order in which suites run.
"""

import math
import zlib
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from . import ck_space, kappa_trig, lie_hamilton
from .ck_space import CANONICAL_SPACES, KappaPair
from .coalgebra import casimir, coproduct, f2_closed_form, generators, poly_poisson, realize
from .errors import CKError, OffManifoldError
from .integrator import integrate
from .superposition import (
    Branch,
    area_newtonian_signed,
    half_side_product,
    recentre,
    rule_values,
    superpose,
    superpose_both,
    triangle_angles,
    triangle_invariants,
)
from .tables import compare as compare_tables


@dataclass
class SuiteResult:
    suite: str
    space: str
    max_residual: float
    tolerance: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def _result(suite, space, residual, tol, detail=None, passed=None):
    residual = float(residual)
    if passed is None:
        passed = bool(residual < tol)
    return SuiteResult(suite, space, residual, float(tol), passed, detail or {})


def make_rng(seed, *labels):
    key = [int(seed)] + [zlib.crc32(str(label).encode()) for label in labels]
    return np.random.default_rng(key)


def interior_points(rng, n):
    """Points safely inside every chart: |x| <= 1, |y| <= 0.7."""
    return list(zip(rng.uniform(-1, 1, n), rng.uniform(-0.7, 0.7, n)))


def triangle_points(kp, rng):
    """Three points whose pairwise distances exist (time-like spread for kappa2 < 0)."""
    if kp.kappa2 > 0:
        return [tuple(rng.uniform(-0.8, 0.8, 2)) for _ in range(3)]
    xs = np.array([-0.6, 0.0, 0.6]) + rng.uniform(-0.1, 0.1, 3)
    rng.shuffle(xs)
    return [(float(x), float(rng.uniform(-0.1, 0.1))) for x in xs]


def flow_starts(kp):
    """Fixed initial triples for flow-based suites."""
    if kp.kappa2 < 0:
        return [(-0.5, 0.02), (0.05, -0.05), (0.6, 0.04)]
    return [(0.1, 0.2), (-0.3, 0.1), (0.25, -0.3)]


# -- kappa trigonometry ---------------------------------------------------------

def suite_trig_identity(seed, n=10_000, tol=1e-12):
    """Fundamental, double-angle and addition identities over kappa in [-4, 4], u in [-3, 3].

    Residuals are divided by max(1, size of the largest term), since for
    hyperbolic arguments the terms reach cosh(6)^2 ~ 4e4 and an absolute
    1e-12 is below double-precision resolution there.  The raw absolute
    maximum is reported alongside.
    """
    rng = make_rng(seed, "trig_identity")
    ks = rng.uniform(-4, 4, n)
    us = rng.uniform(-3, 3, n)
    vs = rng.uniform(-3, 3, n)
    ks[: n // 10] *= 1e-6  # exercise the series branch
    worst = worst_abs = 0.0
    ck, sk = kappa_trig.ck, kappa_trig.sk
    for k, u, v in zip(ks, us, vs):
        c, s = ck(k, u), sk(k, u)
        c2, s2 = ck(k, 2 * u), sk(k, 2 * u)
        checks = (
            (c * c + k * s * s - 1, max(1.0, c * c, abs(k) * s * s)),
            (c2 - (c * c - k * s * s), max(1.0, abs(c2), c * c, abs(k) * s * s)),
            (s2 - 2 * s * c, max(1.0, abs(s2), abs(2 * s * c))),
        )
        for sign in (1, -1):
            cd, sd = ck(k, u + sign * v), sk(k, u + sign * v)
            ca, sa = kappa_trig.ck_add(k, u, v, sign), kappa_trig.sk_add(k, u, v, sign)
            cv, sv = ck(k, v), sk(k, v)
            checks += (
                (cd - ca, max(1.0, abs(cd), abs(c * cv), abs(k * s * sv))),
                (sd - sa, max(1.0, abs(sd), abs(s * cv), abs(c * sv))),
            )
        for r, scale in checks:
            worst = max(worst, abs(r) / scale)
            worst_abs = max(worst_abs, abs(r))
    return _result("trig_identity", "-", worst, tol, {"max_abs_residual": worst_abs, "samples": n})


def suite_trig_derivative(seed, n=1000, tol=1e-6, h=1e-5):
    """Central differences of ck, sk, tk, vk against the analytic derivatives."""
    rng = make_rng(seed, "trig_derivative")
    worst = 0.0
    count = 0
    pairs = (
        (kappa_trig.ck, kappa_trig.dck),
        (kappa_trig.sk, kappa_trig.dsk),
        (kappa_trig.tk, kappa_trig.dtk),
        (kappa_trig.vk, kappa_trig.dvk),
    )
    while count < n:
        k, u = rng.uniform(-4, 4), rng.uniform(-3, 3)
        if abs(kappa_trig.ck(k, u)) < 0.25:
            continue  # keep tk away from its poles
        for f, df in pairs:
            fd = (f(k, u + h) - f(k, u - h)) / (2 * h)
            an = df(k, u)
            worst = max(worst, abs(fd - an) / max(1.0, abs(an)))
        count += 1
    return _result("trig_derivative", "-", worst, tol, {"samples": n, "step": h})


# -- geometry ----------------------------------------------------------------------

def _chart_sample(kp, rng):
    x = rng.uniform(-3, 3) if kp.kappa1 > 0 else rng.uniform(-2, 2)
    if kp.k12 > 0:
        y = rng.uniform(-3, 3)
    else:
        y = rng.uniform(-2, 2)
    return x, y


def suite_chart(kp, seed, n=10_000, tol_round=1e-10, tol_constraint=1e-12):
    rng = make_rng(seed, "chart", kp.name)
    worst_round = worst_c = 0.0
    hx = kappa_trig.period(kp.kappa1)
    skipped = 0
    for _ in range(n):
        p = _chart_sample(kp, rng)
        a = ck_space.parallel_to_ambient(kp, p)
        worst_c = max(worst_c, abs(ck_space.constraint_defect(kp, a)))
        ref = ck_space.normalize(kp, p)
        if abs(ck_space.ck(kp.k12, ref.y)) < 1e-3:
            skipped += 1  # x is undefined at the chart pole
            continue
        q = ck_space.ambient_to_parallel(kp, a)
        dx = abs(q.x - ref.x)
        if hx is not None:
            dx = min(dx, 2 * hx - dx)
        worst_round = max(worst_round, dx, abs(q.y - ref.y))
    return [
        _result("chart_round_trip", kp.name, worst_round, tol_round, {"samples": n, "near_pole_skipped": skipped}),
        _result("ambient_constraint", kp.name, worst_c, tol_constraint, {"samples": n}),
    ]


def _random_element(kp, rng, count, scale=1.0):
    g = ck_space.identity(kp)
    for _ in range(count):
        gen = ck_space.GENERATORS[rng.integers(3)]
        g = g @ ck_space.subgroup_exp(kp, gen, rng.uniform(-scale, scale))
    return g


def suite_group(kp, seed, n=200, tol_iso=1e-10, tol_exp=1e-10, tol_dist=1e-9):
    rng = make_rng(seed, "group", kp.name)
    gens = dict(zip(ck_space.GENERATORS, ck_space.generator_matrices(kp)))
    worst_exp = worst_iso = worst_dist = worst_alg = 0.0
    ik = kp.metric_matrix
    for g in gens.values():
        worst_alg = max(worst_alg, np.max(np.abs(g.T @ ik + ik @ g)))
    comm = ck_space.commutator
    p1, p2, j12 = gens["P1"], gens["P2"], gens["J12"]
    worst_alg = max(
        worst_alg,
        np.max(np.abs(comm(j12, p1) - p2)),
        np.max(np.abs(comm(j12, p2) + kp.kappa2 * p1)),
        np.max(np.abs(comm(p1, p2) - kp.kappa1 * j12)),
    )
    for _ in range(n):
        name = ck_space.GENERATORS[rng.integers(3)]
        a, b = rng.uniform(-2, 2, 2)
        ea = ck_space.subgroup_exp(kp, name, a)
        worst_exp = max(worst_exp, np.max(np.abs(ea.m - expm(a * gens[name]))))
        law = (ea @ ck_space.subgroup_exp(kp, name, b)).m - ck_space.subgroup_exp(kp, name, a + b).m
        worst_exp = max(worst_exp, np.max(np.abs(law)))
        worst_iso = max(worst_iso, _random_element(kp, rng, int(rng.integers(1, 6)), 1.5).isometry_defect())
        # distances are preserved by small isometries applied to nearby points
        g = _random_element(kp, rng, 3, 0.3)
        p, q = triangle_points(kp, rng)[:2]
        try:
            d0 = ck_space.geodesic_distance(kp, p, q)
            d1 = ck_space.geodesic_distance(kp, g.act_parallel(p), g.act_parallel(q))
        except CKError:
            continue
        worst_dist = max(worst_dist, abs(d1 - d0))
    return [
        _result("generator_algebra", kp.name, worst_alg, tol_exp),
        _result("subgroup_exp", kp.name, worst_exp, tol_exp, {"samples": n, "oracle": "scipy.linalg.expm"}),
        _result("isometry", kp.name, worst_iso, tol_iso, {"samples": n}),
        _result("distance_invariance", kp.name, worst_dist, tol_dist, {"samples": n}),
    ]


# -- Lie-Hamilton structure -------------------------------------------------------

def suite_lie_bracket(kp, seed, n=100, tol=1e-6):
    rng = make_rng(seed, "lie_bracket", kp.name)
    worst = 0.0
    for p in interior_points(rng, n):
        for i, j in ((3, 1), (3, 2), (1, 2)):
            got = lie_hamilton.lie_bracket_numeric(kp, i, j, p)
            want = lie_hamilton.bracket_prediction(kp, i, j, p)
            worst = max(worst, abs(got.dx - want.dx), abs(got.dy - want.dy))
    return _result("lie_bracket", kp.name, worst, tol, {"points": n})


def suite_hamiltonian(kp, seed, n=100, tol_res=1e-10, tol_pb=1e-8):
    rng = make_rng(seed, "hamiltonian", kp.name)
    worst_res = worst_pb = 0.0
    for p in interior_points(rng, n):
        for i in (1, 2, 3):
            worst_res = max(worst_res, *map(abs, lie_hamilton.hamiltonian_residual(kp, i, p)))
        for i in range(4):
            fi = (lambda i: lambda q: lie_hamilton.hamiltonian(kp, i, q))(i)
            for j in range(4):
                fj = (lambda j: lambda q: lie_hamilton.hamiltonian(kp, j, q))(j)
                want = lie_hamilton.poisson_prediction(kp, i, j, p)
                worst_pb = max(
                    worst_pb,
                    abs(lie_hamilton.poisson_bracket(kp, i, j, p) - want),
                    abs(lie_hamilton.poisson_bracket(kp, fi, fj, p) - want),
                )
    return [
        _result("hamiltonian_residual", kp.name, worst_res, tol_res, {"points": n}),
        _result("poisson_table", kp.name, worst_pb, tol_pb, {"points": n}),
    ]


# -- coalgebra ----------------------------------------------------------------------

def suite_casimir_centrality(seed, n=20):
    """Exact centrality with rational kappa values: every bracket must be the zero polynomial."""
    rng = make_rng(seed, "casimir_centrality")
    pairs = [KappaPair(Fraction(int(a), 7), Fraction(int(b), 5)) for a, b in rng.integers(-20, 21, (n, 2))]
    pairs += [KappaPair(Fraction(int(k.kappa1)), Fraction(int(k.kappa2))) for k in CANONICAL_SPACES.values()]
    nonzero = 0
    worst = Fraction(0)
    for kp in pairs:
        c = casimir(kp)
        for g in generators():
            b = poly_poisson(kp, c, g)
            if not b.is_zero():
                nonzero += 1
                worst = max(worst, b.max_abs_coeff())
    return _result("casimir_centrality", "-", float(worst), 0.0, {"kappa_pairs": len(pairs), "nonzero_brackets": nonzero},
                   passed=nonzero == 0)


def suite_coalgebra(kp, seed, n_single=10_000, n_pairs=1000, tol_c=1e-12, tol_f2=1e-10):
    rng = make_rng(seed, "coalgebra", kp.name)
    c = casimir(kp)
    d1 = realize(kp, c)
    d2 = realize(kp, coproduct(c))
    worst_c = max(abs(d1(p)) for p in interior_points(rng, n_single))
    worst_f2 = worst_vk = 0.0
    for _ in range(n_pairs):
        p, q = triangle_points(kp, rng)[:2]
        f2 = f2_closed_form(kp, p, q)
        worst_f2 = max(worst_f2, abs(d2(p, q) - f2))
        try:
            s = ck_space.geodesic_distance(kp, p, q)
        except OffManifoldError:
            continue
        worst_vk = max(worst_vk, abs(kappa_trig.vk(kp.kappa1, s) - f2))
    return [
        _result("casimir_realization", kp.name, worst_c, tol_c, {"points": n_single}),
        _result("coproduct_closed_form", kp.name, max(worst_f2, worst_vk), tol_f2,
                {"pairs": n_pairs, "coproduct_vs_closed_form": worst_f2, "closed_form_vs_distance": worst_vk}),
    ]


# -- flows ------------------------------------------------------------------------

def _three_flows(kp, coeffs, t0, t1, step, starts=None):
    return [integrate(kp, coeffs, p, t0, t1, step) for p in (starts or flow_starts(kp))]


def drift_of(kp, trajs):
    a, b, c = trajs
    f = {
        "F2": [f2_closed_form(kp, p, q) for p, q in zip(a.raw, b.raw)],
        "F2_13": [f2_closed_form(kp, p, q) for p, q in zip(c.raw, b.raw)],
        "F2_23": [f2_closed_form(kp, p, q) for p, q in zip(a.raw, c.raw)],
    }
    return {k: max(abs(v - s[0]) for v in s) for k, s in f.items()}


def drift_ratio(kp, coeffs, coarse=0.1, t0=0.0, t1=1.0):
    """Drift at ``coarse`` over drift at ``coarse/2``; None when both sit at roundoff."""
    d = []
    for h in (coarse, coarse / 2):
        d.append(max(drift_of(kp, _three_flows(kp, coeffs, t0, t1, h)).values()))
    if d[0] < 1e-13:
        return None, d
    return d[0] / d[1], d


def suite_conservation(kp, coeffs, seed, t0=0.0, t1=1.0, step=1e-3, tol=1e-6, ratio_band=(12.0, 20.0)):
    drift = drift_of(kp, _three_flows(kp, coeffs, t0, t1, step))
    ratio, coarse = drift_ratio(kp, coeffs, t0=t0, t1=t1)
    if kp.kappa2 == 0:
        regime = "exact"  # dx/dt = b1(t) for every solution, so x differences never change
        ratio_ok = coarse[0] < 1e-13
    elif kp.kappa1 == 0:
        regime = "superconvergent"  # affine flow: RK4 amplitude error is fifth order
        ratio_ok = ratio is not None and ratio >= ratio_band[0]
    else:
        regime = "fourth_order"
        ratio_ok = ratio is not None and ratio_band[0] <= ratio <= ratio_band[1]
    worst = max(drift.values())
    return [
        _result("conservation", kp.name, worst, tol, {"step": step, **drift}),
        _result("drift_ratio", kp.name, ratio if ratio is not None else 0.0, ratio_band[1],
                {"regime": regime, "coarse_steps": [0.1, 0.05], "coarse_drift": coarse, "band": list(ratio_band)},
                passed=ratio_ok),
    ]


def reconstruct(kp, trajs, samples=100):
    """Apply the superposition rule along three flows with constants frozen at the first sample."""
    a, b, c = trajs
    inv = triangle_invariants(kp, a.points[0], b.points[0], c.points[0])
    n = len(a) - 1
    idx = sorted(set(int(round(v)) for v in np.linspace(0, n, samples)))
    rows = []
    for i in idx:
        q1, q2, q3 = a.points[i], b.points[i], c.points[i]
        plus, minus = superpose_both(kp, q2, q3, inv.s1, inv.s2, area=inv.area, strict=False)
        errs = []
        for r in (plus, minus):
            if r is None:
                errs.append(math.inf)
                continue
            dx = abs(r[0] - q1[0])
            h = kappa_trig.period(kp.kappa1)
            if h is not None:
                dx = min(dx, 2 * h - dx)
            errs.append(math.hypot(dx, r[1] - q1[1]))
        rows.append((float(a.times[i]), q1, plus, minus, errs[0], errs[1]))
    return inv, rows


def suite_superposition(kp, coeffs, seed, t0=0.0, t1=1.0, step=1e-3, samples=100, tol=1e-5):
    trajs = _three_flows(kp, coeffs, t0, t1, step)
    inv, rows = reconstruct(kp, trajs, samples)
    best = [min(r[4], r[5]) for r in rows]
    choice = [0 if r[4] <= r[5] else 1 for r in rows]
    flips = sum(1 for u, v in zip(choice, choice[1:]) if u != v)
    area_source = "newtonian" if kp.kappa2 == 0 else "lhuillier"
    return _result(
        "superposition", kp.name, max(best), tol,
        {"samples": len(rows), "area_source": area_source, "area": inv.area, "sides": [inv.s1, inv.s2, inv.s3],
         "degenerate": inv.degenerate, "branch_flips": flips,
         "branch": "PLUS" if choice[0] == 0 else "MINUS"},
    )


def suite_newtonian_rule(kp, coeffs, seed, n=200, tol=1e-10):
    """kappa2 = 0: the y relation against the angle construction of the orthogonal triangles."""
    rng = make_rng(seed, "newtonian_rule", kp.name)
    k1 = kp.kappa1
    worst = 0.0
    for _ in range(n):
        q1, q2, q3 = triangle_points(kp, rng)
        (a, y1), (c, y3) = recentre(kp, q2, [q1, q3])
        inv = triangle_invariants(kp, q1, q2, q3)
        # y1 = sk(a)(alpha + beta), y3 = sk(c) beta, alpha from the area
        beta = y3 / kappa_trig.sk(k1, c)
        alpha = 2 * half_side_product(kp, inv.s1, inv.s2, inv.s3) * area_newtonian_signed(kp, q1, q2, q3)
        alpha /= kappa_trig.sk(k1, a) * kappa_trig.sk(k1, c)
        y_angles = kappa_trig.sk(k1, a) * (alpha + beta)
        worst = max(worst, abs(y_angles - y1))
        ys = [rule_values(kp, c, y3, inv.s1, inv.s2, inv.s3, inv.area, s)[1] for s in (1, -1)]
        worst = max(worst, min(abs(v - y_angles) for v in ys))
    return _result("newtonian_rule", kp.name, worst, tol, {"triangles": n})


def suite_angle_identity(kp, seed, n=200, tol=1e-8):
    rng = make_rng(seed, "angle_identity", kp.name)
    worst = 0.0
    used = 0
    for _ in range(n):
        q1, q2, q3 = triangle_points(kp, rng)
        try:
            cb, sb, ca, sa = triangle_angles(kp, q1, q2, q3)
        except CKError:
            continue
        if triangle_invariants(kp, q1, q2, q3).degenerate:
            continue
        used += 1
        worst = max(worst, abs(cb * cb + kp.kappa2 * sb * sb - 1), abs(ca * ca + kp.kappa2 * sa * sa - 1))
    return _result("angle_identity", kp.name, worst, tol, {"triangles": used})


def suite_tables(kp, tol=1e-12):
    rows, worst = compare_tables([kp.name])[kp.name]
    return _result("tables", kp.name, worst, tol, {"samples": len(rows)})


# -- contraction --------------------------------------------------------------------

CONTRACTION_EPS = 1e-7
CONTRACTION_POINTS = ((0.3, -0.2), (-0.7, 0.4), (1.1, 0.1))
CONTRACTION_TRIANGLE = ((0.1, 0.2), (-0.3, 0.1), (0.25, -0.3))
CONTRACTION_TRIANGLE_TIMELIKE = ((-0.5, 0.02), (0.05, -0.05), (0.6, 0.04))


def _exported(kp, area_kp=None):
    """Every exported quantity at the fixed contraction test points."""
    vals = []
    for u in (0.3, -1.2, 2.5):
        for f in (kappa_trig.ck, kappa_trig.sk, kappa_trig.vk, kappa_trig.tk):
            vals.append(f(kp.kappa1, u))
    for p in CONTRACTION_POINTS:
        vals.append(lie_hamilton.hamiltonian(kp, 3, p))
    for p, q in zip(CONTRACTION_POINTS, CONTRACTION_POINTS[1:]):
        vals.append(f2_closed_form(kp, p, q))
    ref = area_kp or kp
    tri = CONTRACTION_TRIANGLE_TIMELIKE if ref.kappa2 < 0 else CONTRACTION_TRIANGLE
    q1, q2, q3 = tri
    # area is always taken at the reference space so that the kappa2 -> 0 sweep
    # compares the rule itself rather than the side-length area formula
    area = triangle_invariants(ref, q1, q2, q3).area
    s1 = ck_space.geodesic_distance(kp, q1, q2)
    s2 = ck_space.geodesic_distance(kp, q1, q3)
    for b in (Branch.PLUS, Branch.MINUS):
        vals.extend(superpose(kp, q2, q3, s1, s2, b, area=area))
    return np.array(vals, dtype=float)


def contraction_report(eps=CONTRACTION_EPS):
    """Max |quantity(kappa = +-eps) - quantity(kappa = 0)| for each contraction direction."""
    rows = []
    for k2 in (1.0, 0.0, -1.0):
        base = KappaPair(0.0, k2)
        ref = _exported(base)
        for sgn in (1, -1):
            kp = KappaPair(sgn * eps, k2)
            area_kp = base if k2 == 0 else None
            rows.append(("kappa1", kp, float(np.max(np.abs(_exported(kp, area_kp) - ref)))))
    for k1 in (1.0, 0.0, -1.0):
        base = KappaPair(k1, 0.0)
        ref = _exported(base)
        for sgn in (1, -1):
            kp = KappaPair(k1, sgn * eps)
            rows.append(("kappa2", kp, float(np.max(np.abs(_exported(kp, base) - ref)))))
    return rows


def suite_contraction(tol=1e-5):
    rows = contraction_report()
    worst = max(r[2] for r in rows)
    detail = {f"{d}@({kp.kappa1:g},{kp.kappa2:g})": v for d, kp, v in rows}
    return _result("contraction", "-", worst, tol, detail)


# -- driver ---------------------------------------------------------------------------

def run_space(kp, cfg):
    tol = cfg.tolerances
    seed = cfg.seed
    out = []
    out += suite_chart(kp, seed, tol_round=tol["chart_round_trip"], tol_constraint=tol["ambient_constraint"])
    out += suite_group(kp, seed, tol_iso=tol["isometry"], tol_exp=tol["subgroup_exp"], tol_dist=tol["distance_invariance"])
    out.append(suite_lie_bracket(kp, seed, tol=tol["lie_bracket"]))
    out += suite_hamiltonian(kp, seed, tol_res=tol["hamiltonian_residual"], tol_pb=tol["poisson_table"])
    out += suite_coalgebra(kp, seed, tol_c=tol["casimir_realization"], tol_f2=tol["coproduct_closed_form"])
    out += suite_conservation(kp, cfg.coefficients, seed, cfg.t0, cfg.t1, cfg.step, tol["drift"],
                              (tol["drift_ratio_low"], tol["drift_ratio_high"]))
    out.append(suite_superposition(kp, cfg.coefficients, seed, cfg.t0, cfg.t1, cfg.step, cfg.samples,
                                   tol["superposition"]))
    if kp.kappa2 == 0:
        out.append(suite_newtonian_rule(kp, cfg.coefficients, seed, tol=tol["newtonian_rule"]))
    else:
        out.append(suite_angle_identity(kp, seed, tol=tol["angle_identity"]))
    out.append(suite_tables(kp, tol["tables"]))
    return out


def run_all(cfg, spaces=None):
    tol = cfg.tolerances
    results = [
        suite_trig_identity(cfg.seed, tol=tol["trig_identity"]),
        suite_trig_derivative(cfg.seed, tol=tol["trig_derivative"]),
        suite_casimir_centrality(cfg.seed),
        suite_contraction(tol["contraction"]),
    ]
    for name in spaces or cfg.spaces:
        results += run_space(CANONICAL_SPACES[name], cfg)
    return results
