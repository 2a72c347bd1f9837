from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cklie import coalgebra as co
from cklie.ck_space import CANONICAL_SPACES, KappaPair, geodesic_distance
from cklie.coalgebra import PolyElement
from cklie.kappa_trig import vk

SPACES = list(CANONICAL_SPACES.items())
EUC = KappaPair(0, 1)
v0, v1, v2, v3 = co.generators()
fracs = st.fractions(min_value=-3, max_value=3, max_denominator=9)


def bracket_table(kp):
    """{v_a, v_b} as single-slot polynomials."""
    z = PolyElement(1)
    t = [[z] * 4 for _ in range(4)]
    t[3][1], t[1][3] = -v2, v2
    t[3][2], t[2][3] = v1 * kp.kappa2, v1 * (-kp.kappa2)
    t[1][2] = v0 - v3 * kp.kappa1
    t[2][1] = v3 * kp.kappa1 - v0
    return t


def bracket_by_partials(kp, f, g):
    t = bracket_table(kp)
    out = PolyElement(1)
    for a in range(4):
        for b in range(4):
            if t[a][b].is_zero():
                continue
            out = out + f.derivative(0, a) * g.derivative(0, b) * t[a][b]
    return out


def random_poly(draw_coeffs, exps):
    p = PolyElement(1)
    for c, e in zip(draw_coeffs, exps):
        term = PolyElement.const(c)
        for a, n in enumerate(e):
            term = term * co.generators()[a] ** n
        p = p + term
    return p


monomials = st.lists(st.tuples(*[st.integers(0, 2)] * 4), min_size=1, max_size=4)


def test_generator_brackets():
    kp = KappaPair(Fraction(1, 3), Fraction(-2, 5))
    assert co.poly_poisson(kp, v3, v1) == -v2
    assert co.poly_poisson(kp, v0, v1 * v2 * v3).is_zero()
    assert co.poly_poisson(kp, v1 * v1, v2) == v1 * (v0 - v3 * kp.kappa1) * 2


@settings(max_examples=60, deadline=None)
@given(fracs, fracs, st.data())
def test_bracket_matches_partial_derivative_formula(k1, k2, data):
    kp = KappaPair(k1, k2)
    ef, eg = data.draw(monomials), data.draw(monomials)
    f = random_poly(data.draw(st.lists(fracs, min_size=len(ef), max_size=len(ef))), ef)
    g = random_poly(data.draw(st.lists(fracs, min_size=len(eg), max_size=len(eg))), eg)
    assert co.poly_poisson(kp, f, g) == bracket_by_partials(kp, f, g)
    assert co.poly_poisson(kp, f, g) == -co.poly_poisson(kp, g, f)


@settings(max_examples=30, deadline=None)
@given(fracs, fracs)
def test_jacobi_identity_on_generators(k1, k2):
    kp = KappaPair(k1, k2)
    gens = co.generators()
    br = lambda a, b: co.poly_poisson(kp, a, b)  # noqa: E731
    for a in gens:
        for b in gens:
            for c in gens:
                total = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
                assert total.is_zero()


def test_casimir_forms():
    half = Fraction(1, 2)
    euc = co.casimir(KappaPair(Fraction(0), Fraction(1)))
    assert euc == v3 * v0 - (v1 * v1 + v2 * v2) * half
    ads = co.casimir(KappaPair(Fraction(1), Fraction(-1)))
    assert ads == v3 * v0 + (v1 * v1 - v2 * v2 - v3 * v3) * half


@settings(max_examples=60, deadline=None)
@given(fracs, fracs)
def test_casimir_is_central_exactly(k1, k2):
    kp = KappaPair(k1, k2)
    c = co.casimir(kp)
    for g in co.generators():
        assert co.poly_poisson(kp, c, g).is_zero()


def test_coproduct_examples():
    a0, a1 = co.generators(2, 0)[1], co.generators(2, 1)[1]
    assert co.coproduct(v1) == a0 + a1
    assert co.coproduct(PolyElement.const(1)) == PolyElement.const(1, 2)
    assert co.coproduct(v1 * v1) == a0 * a0 + a0 * a1 * 2 + a1 * a1
    with pytest.raises(ValueError):
        co.coproduct(a0)


@settings(max_examples=30, deadline=None)
@given(fracs, fracs)
def test_coproduct_is_bracket_homomorphism(k1, k2):
    kp = KappaPair(k1, k2)
    gens = co.generators()
    for a in gens:
        for b in gens:
            lhs = co.coproduct(co.poly_poisson(kp, a, b))
            rhs = co.poly_poisson(kp, co.coproduct(a), co.coproduct(b))
            assert lhs == rhs


@pytest.mark.parametrize("name, kp", SPACES)
def test_single_copy_casimir_vanishes(name, kp):
    f = co.realize(kp, co.casimir(kp))
    rng = np.random.default_rng(1)
    for x, y in zip(rng.uniform(-1, 1, 500), rng.uniform(-0.7, 0.7, 500)):
        assert abs(f((x, y))) < 1e-12


def test_realize_examples():
    assert co.realize(EUC, v1)((0.3, 0.8)) == pytest.approx(0.8)
    f2 = co.realize(EUC, co.coproduct(co.casimir(EUC)))
    assert f2((0, 0), (1, 1)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        f2((0, 0))


@settings(max_examples=50, deadline=None)
@given(st.tuples(st.floats(-2, 2), st.floats(-2, 2)), st.tuples(st.floats(-2, 2), st.floats(-2, 2)))
def test_euclidean_two_point_invariant(p, q):
    expected = 0.5 * ((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2)
    assert co.f2_closed_form(EUC, p, q) == pytest.approx(expected, abs=1e-12)


def test_two_point_invariant_values():
    sph = KappaPair(1, 1)
    assert co.f2_closed_form(sph, (0, 0), (np.pi / 2, 0)) == pytest.approx(1.0)
    assert co.f2_closed_form(sph, (0.3, 0.2), (0.3, 0.2)) == 0.0


@pytest.mark.parametrize("name, kp", SPACES)
def test_coproduct_realization_equals_closed_form(name, kp):
    d2 = co.realize(kp, co.coproduct(co.casimir(kp)))
    rng = np.random.default_rng(2)
    for _ in range(300):
        p, q = rng.uniform(-0.8, 0.8, (2, 2))
        assert d2(p, q) == pytest.approx(co.f2_closed_form(kp, p, q), abs=1e-10)


@pytest.mark.parametrize("name, kp", SPACES)
def test_closed_form_is_versed_sine_of_distance(name, kp):
    rng = np.random.default_rng(3)
    checked = 0
    for _ in range(300):
        p = (rng.uniform(-0.8, 0.8), rng.uniform(-0.1, 0.1))
        q = (rng.uniform(-0.8, 0.8), rng.uniform(-0.1, 0.1))
        try:
            s = geodesic_distance(kp, p, q)
        except ArithmeticError:
            continue
        checked += 1
        assert vk(kp.kappa1, s) == pytest.approx(co.f2_closed_form(kp, p, q), abs=1e-10)
    assert checked > 50


def test_permuted_invariants():
    p1, p2, p3 = (0.1, 0.2), (-0.4, 0.5), (0.7, -0.3)
    assert co.f2_permuted(EUC, 23, p1, p2, p1) == 0.0
    expected = 0.5 * ((p3[0] - p2[0]) ** 2 + (p3[1] - p2[1]) ** 2)
    assert co.f2_permuted(EUC, 13, p1, p2, p3) == pytest.approx(expected)
    with pytest.raises(ValueError):
        co.f2_permuted(EUC, 12, p1, p2, p3)


def test_invariant_fn():
    kp = CANONICAL_SPACES["hyperbolic"]
    p1, p2, p3 = (0.1, 0.2), (-0.4, 0.5), (0.7, -0.3)
    assert co.InvariantFn(kp, "F")(p1) == pytest.approx(0.0, abs=1e-14)
    assert co.InvariantFn(kp, "F2")(p1, p2) == co.f2_closed_form(kp, p1, p2)
    assert co.InvariantFn(kp, "F2_13")(p1, p2, p3) == co.f2_closed_form(kp, p3, p2)
    assert co.InvariantFn(kp, "F2_23")(p1, p2, p3) == co.f2_closed_form(kp, p1, p3)
    assert co.InvariantFn(kp, "F2").side_length(p1, p2) == pytest.approx(geodesic_distance(kp, p1, p2))
    with pytest.raises(ValueError):
        co.InvariantFn(kp, "F2")(p1)
