"""Germ operations: bracket, directional derivative, decompose, pullback, splits."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from germforge.errors import DegenerateFrame, NonzeroEigenvalue, PoleAtOrigin
from germforge.germ import (
    CoordinateChange,
    RationalFn,
    VectorFieldGerm,
    decompose,
    derive_along,
    lie_bracket,
    linear_part,
    primitive_split,
    pullback,
)
from germforge.scalars import EXACT, GaussianRational
from germforge.series import INF, Jet2, jet_mul

GR = GaussianRational


def x(valid=14):
    return Jet2.variable("x", EXACT, valid)


def y(valid=14):
    return Jet2.variable("y", EXACT, valid)


def vf(a, b):
    return VectorFieldGerm(a, b)


def zero(valid=14):
    return Jet2.zero(EXACT, valid)


# -- lie bracket -------------------------------------------------------------

def test_bracket_separated_variables():
    assert lie_bracket(vf(jet_mul(x(), x()), zero()),
                       vf(zero(), jet_mul(y(), y()))).is_zero()


def test_bracket_pair_family_iii():
    xf = vf(jet_mul(y(), y()), zero())
    yf = vf(jet_mul(y(), x()).scale(2), jet_mul(y(), y()))
    assert lie_bracket(xf, yf).is_zero()


def test_bracket_pair_family_v():
    xf = vf(jet_mul(jet_mul(y(), y()), jet_mul(x(), x())), zero())
    yf = vf(jet_mul(x(), y().scale(2) - x().scale(3)), -jet_mul(y(), y()))
    assert lie_bracket(xf, yf).is_zero()


def test_bracket_nonzero_for_separatrix_lemma_pair():
    # x(x-2y) dx + y(y-2x) dy against (x-y)(x dx - y dy): quadratic bracket
    e = vf(jet_mul(x(), x() - y().scale(2)), jet_mul(y(), y() - x().scale(2)))
    w = vf(jet_mul(x() - y(), x()), -jet_mul(x() - y(), y()))
    br = lie_bracket(e, w)
    assert not br.is_zero()
    # bracket of two homogeneous quadratic fields is homogeneous cubic
    assert br.order() == 3
    assert br.a.homogeneous_part(3).equals(br.a)


def test_bracket_antisymmetry_and_jacobi():
    rng = random.Random(5)

    def rand():
        coeffs = {}
        for i in range(3):
            for j in range(3 - i):
                c = rng.randint(-2, 2)
                if c:
                    coeffs[(i, j)] = GR(c)
        return vf(Jet2(EXACT, coeffs, 10), Jet2(EXACT, dict(coeffs), 10))

    for _ in range(20):
        a, b, c = rand(), rand(), rand()
        assert (lie_bracket(a, b) + lie_bracket(b, a)).is_zero()
        jac = (lie_bracket(lie_bracket(a, b), c)
               + lie_bracket(lie_bracket(b, c), a)
               + lie_bracket(lie_bracket(c, a), b))
        assert jac.is_zero()


def test_homogeneous_commutation_constraint_sweep():
    # bracket of x^a y^b (m x dx - n y dy) pairs vanishes iff the two linear
    # relations among (a, b, m, n, a*, b*, m*, n*) hold
    def make(a, b, m, n):
        mono = Jet2.monomial(a, b, 1, EXACT, INF)
        return vf(jet_mul(mono, x(INF).scale(m)), -jet_mul(mono, y(INF).scale(n)))

    def relations(a, b, m, n, a2, b2, m2, n2):
        lhs1 = Fraction(b - b2)
        rhs1 = Fraction(m2, n2) * a - Fraction(m, n) * a2
        lhs2 = Fraction(a - a2)
        rhs2 = Fraction(n2, m2) * b - Fraction(n, m) * b2
        return lhs1 == rhs1 and lhs2 == rhs2

    cases = 0
    agree = 0
    for (a, b, m, n, a2, b2, m2, n2) in [
        (1, 0, 1, 1, 0, 1, 1, 1), (1, 1, 1, 1, 2, 2, 1, 1),
        (1, 0, 2, 1, 1, 0, 2, 1), (2, 1, 1, 1, 1, 2, 1, 1),
        (1, 2, 2, 3, 2, 1, 3, 2), (0, 1, 1, 2, 1, 0, 2, 1),
        (2, 0, 1, 2, 0, 2, 2, 1), (1, 1, 2, 1, 1, 1, 1, 2),
        (3, 1, 1, 3, 1, 3, 3, 1), (2, 2, 1, 1, 1, 1, 1, 1),
    ]:
        xh = make(a, b, m, n)
        yh = make(a2, b2, m2, n2)
        vanished = lie_bracket(xh.truncate(12), yh.truncate(12)).is_zero()
        cases += 1
        if vanished == relations(a, b, m, n, a2, b2, m2, n2):
            agree += 1
    assert agree == cases


# -- directional derivative -----------------------------------------------------

def test_first_integral_elliptic():
    e = vf(jet_mul(x(), x() - y().scale(2)), jet_mul(y(), y() - x().scale(2)))
    f = jet_mul(jet_mul(x(), y()), x() - y())
    assert derive_along(e, f).is_zero()


def test_first_integral_parabolic_meromorphic():
    # n = 0: x^2 dx + y^2 dy annihilates xy/(x-y)
    p = vf(jet_mul(x(), x()), jet_mul(y(), y()))
    f = RationalFn(jet_mul(x(), y()), x() - y())
    assert derive_along(p, f).is_zero()


def test_first_integral_nilpotent():
    p = vf(y() - jet_mul(x(), x()).scale(2), -jet_mul(x(), y()).scale(2))
    f = RationalFn(jet_mul(y(), y()), y() - jet_mul(x(), x()))
    assert derive_along(p, f).is_zero()


def test_non_integral():
    assert not derive_along(vf(x(), zero()), x()).is_zero()


def test_leibniz_rule():
    rng = random.Random(17)
    for _ in range(10):
        coeffs = lambda: Jet2(
            EXACT,
            {(i, j): GR(rng.randint(-2, 2)) for i in range(3) for j in range(3 - i)},
            10,
        )
        xf = vf(coeffs(), coeffs())
        f, g = coeffs(), coeffs()
        lhs = derive_along(xf, jet_mul(f, g))
        rhs = jet_mul(f, derive_along(xf, g)) + jet_mul(g, derive_along(xf, f))
        assert lhs.equals(rhs)


# -- decompose --------------------------------------------------------------------

def test_decompose_diagonal():
    xf = vf(jet_mul(x(), x()), zero())
    yf = vf(zero(), jet_mul(y(), y()))
    zf = xf + yf
    f, g = decompose(zf, xf, yf)
    one = RationalFn.from_jet(Jet2.const(1, EXACT, 12))
    assert f.equals(one) and g.equals(one)


def test_decompose_crossed_frame():
    xf = vf(y(), zero())
    yf = vf(zero(), x())
    zf = vf(x(), zero())
    f, g = decompose(zf, xf, yf)
    assert f.equals(RationalFn(x(), y()))
    assert g.is_zero()


def test_decompose_linearity_on_pair():
    from germforge.catalog import NormalFormID, make_pair

    xf, yf = make_pair(NormalFormID("mt", "v", {"n": 1}), EXACT, 12)
    zf = xf.scale(2) + yf.scale(3)
    f, g = decompose(zf, xf, yf)
    assert f.equals(RationalFn.from_jet(Jet2.const(2, EXACT, 12)))
    assert g.equals(RationalFn.from_jet(Jet2.const(3, EXACT, 12)))


def test_decompose_degenerate_frame():
    xf = vf(x(), y())
    with pytest.raises(DegenerateFrame):
        decompose(xf, xf, xf.scale(2))


# -- pullback ----------------------------------------------------------------------

def test_pullback_linear_scale():
    # mx dx - ny dy under (x, y) = (2u, v) keeps the diagonal form
    xf = vf(x(INF).scale(3), y(INF).scale(-2))
    change = CoordinateChange.linear(2, 0, 0, 1)
    out = pullback(xf.truncate(10), change)
    assert out.equals(vf(x(10).scale(3), y(10).scale(-2)))


def test_pullback_blowdown_chart():
    # x dx + y dy under (x, y) = (u, uv) -> u du (radial in blow-up chart);
    # the chart has singular Jacobian at 0, so it is a monomial chart
    change = CoordinateChange.monomial_chart(
        forward=((1, 0, 1), (1, 1, 1)),     # x = u, y = uv
        inverse=((1, 0, 1), (-1, 1, 1)),    # u = x, v = y/x
    )
    out = pullback(vf(x(INF), y(INF)), change)
    assert out.a.equals(Jet2.variable("x", EXACT, INF))
    assert out.b.is_zero()


def test_pullback_functoriality():
    rng = random.Random(23)
    u = Jet2.variable("x", EXACT, 10)
    v = Jet2.variable("y", EXACT, 10)
    c1 = CoordinateChange.from_series(u + jet_mul(u, v), v)
    c2 = CoordinateChange.from_series(u, v + jet_mul(u, u).scale(2))
    xf = vf(jet_mul(u, v), jet_mul(u, u) - v)
    lhs = pullback(pullback(xf, c2), c1)
    rhs = pullback(xf, c2.compose(c1))
    assert lhs.truncate(8).equals(rhs.truncate(8))


def test_pullback_inverse_roundtrip():
    u = Jet2.variable("x", EXACT, 10)
    v = Jet2.variable("y", EXACT, 10)
    c = CoordinateChange.from_series(u + jet_mul(v, v), v - jet_mul(u, u))
    inv = c.inverse(10)
    comp = c.compose(inv)
    assert comp.comp1.truncate(9).equals(u.truncate(9))
    assert comp.comp2.truncate(9).equals(v.truncate(9))


def test_pullback_elliptic_chart_matches_hand_derivation():
    # chart (x, y) = (1/u, v/u): direct differentiation of the elliptic field
    # gives (2v - 1) du + (3v(v-1)/u) dv; with the pole factor u declared the
    # returned germ is u(2v-1) du + 3v(v-1) dv
    e = VectorFieldGerm(
        jet_mul(x(INF), x(INF) - y(INF).scale(2)),
        jet_mul(y(INF), y(INF) - x(INF).scale(2)),
    )
    chart = CoordinateChange.monomial_chart(
        forward=((-1, 0, 1), (-1, 1, 1)),   # x = 1/u, y = v/u
        inverse=((-1, 0, 1), (-1, 1, 1)),   # u = 1/x, v = y/x
    )
    with pytest.raises(PoleAtOrigin):
        pullback(e, chart)
    out = pullback(e, chart, clear=(1, 0))
    u = Jet2.variable("x", EXACT, INF)
    v = Jet2.variable("y", EXACT, INF)
    expected_du = jet_mul(u, v.scale(2) - Jet2.const(1, EXACT, INF))
    expected_dv = jet_mul(v, v - Jet2.const(1, EXACT, INF)).scale(3)
    assert out.a.equals(expected_du)
    assert out.b.equals(expected_dv)
    # the du coefficient comes out opposite to u(1-2v) while the dv part
    # matches as-is: not an overall sign flip of the whole display
    printed = VectorFieldGerm(
        jet_mul(u, Jet2.const(1, EXACT, INF) - v.scale(2)), expected_dv
    )
    assert out.a.equals(-printed.a)
    assert out.b.equals(printed.b)
    assert not out.equals(-printed)


# -- primitive split / linear part ---------------------------------------------------

def test_primitive_split_monomial():
    xf = vf(jet_mul(jet_mul(x(), y()), x()), -jet_mul(jet_mul(x(), y()), y()))
    factors, prim = primitive_split(xf)
    assert {(f.label, f.power) for f in factors} == {("x", 1), ("y", 1)}
    assert prim.equals(vf(x(12), -y(12)))


def test_primitive_split_declared_form():
    form = x(INF) - y(INF)
    pre = jet_mul(jet_mul(jet_mul(x(INF), x(INF)), y(INF)), form)
    xf = vf(jet_mul(pre, x(INF)), -jet_mul(pre, y(INF)))
    factors, prim = primitive_split(xf, [("x-y", form)])
    assert {(f.label, f.power) for f in factors} == {("x", 2), ("y", 1), ("x-y", 1)}
    assert prim.a.equals(Jet2.variable("x", EXACT, INF))


def test_primitive_split_trivial():
    xf = vf(jet_mul(x(), x()), -jet_mul(y(), x() - y().scale(2)))
    factors, prim = primitive_split(xf, [("x-y", x(INF) - y(INF))])
    assert factors == []
    assert prim.equals(xf)


def test_linear_part_cases():
    lp = linear_part(vf(jet_mul(x(), x()), zero()))
    assert lp.is_zero_matrix(EXACT)
    assert lp.eigenvalues == (GR(0), GR(0))

    nil = linear_part(vf(y() - jet_mul(x(), x()).scale(2), -jet_mul(x(), y()).scale(2)))
    assert nil.is_nilpotent(EXACT)
    assert nil.matrix[0][1] == GR(1)

    diag = linear_part(vf(x().scale(4), y().scale(-3)))
    assert diag.eigenvalues == (GR(4), GR(-3))
