"""Series kernel: arithmetic, precision bookkeeping, residues, the ODE solver."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germforge.errors import (
    CompositionAtNonzeroPoint,
    ModeMismatch,
    NotAUnit,
    PrecisionExhausted,
)
from germforge.scalars import EXACT, FLOAT, GaussianRational
from germforge.series import (
    DIVISIBLE,
    INF,
    NOT_DIVISIBLE,
    Jet1,
    Jet2,
    exact_divide,
    jet_compose1,
    jet_derive,
    jet_mul,
    jet_reciprocal,
    laurent_residue,
    ode_residual,
    series_ode_solve,
)

import oracles


def x(valid=16):
    return Jet2.variable("x", EXACT, valid)


def y(valid=16):
    return Jet2.variable("y", EXACT, valid)


# -- products -----------------------------------------------------------------

def test_monomial_product():
    p = jet_mul(x(), y())
    assert p.coeffs == {(1, 1): GaussianRational(1)}


def test_elliptic_component_product():
    p = jet_mul(x() - y().scale(2), x())
    assert p.coeffs == {(2, 0): GaussianRational(1), (1, 1): GaussianRational(-2)}


def test_geometric_series_inverse_product():
    one = Jet2.const(1, EXACT, 10)
    inv = jet_reciprocal(one + x(10))
    assert jet_mul(one + x(10), inv).equals(one)


def test_product_precision_rule():
    a = x(5)          # valid 5, order 1
    b = y(7)          # valid 7, order 1
    p = jet_mul(a, b)
    assert p.valid_through == 6  # min(5 + 1, 7 + 1)


def test_mode_mixing_is_an_error():
    with pytest.raises(ModeMismatch):
        jet_mul(x(), Jet2.variable("x", FLOAT, 8))


# -- reciprocal ----------------------------------------------------------------

def test_reciprocal_identity():
    one = Jet2.const(1, EXACT, 8)
    assert jet_reciprocal(one).equals(one)


def test_reciprocal_geometric():
    one = Jet2.const(1, EXACT, 6)
    r = jet_reciprocal(one + x(6))
    for k in range(7):
        assert r.coeff(k, 0) == GaussianRational((-1) ** k)


def test_reciprocal_of_mr_style_unit():
    # 1 + 2(xy) -> 1 - 2xy + 4x^2y^2 - ..., checked by multiplying back
    one = Jet2.const(1, EXACT, 10)
    u = one + jet_mul(x(10), y(10)).scale(2)
    r = jet_reciprocal(u)
    assert jet_mul(u, r).equals(one)
    assert r.coeff(1, 1) == GaussianRational(-2)
    assert r.coeff(2, 2) == GaussianRational(4)


def test_reciprocal_nonunit_raises():
    with pytest.raises(NotAUnit):
        jet_reciprocal(x())


def test_reciprocal_roundtrip_random_units():
    rng = random.Random(12345)
    one = Jet2.const(1, EXACT, 8)
    for _ in range(100):
        coeffs = {(0, 0): GaussianRational(rng.randint(1, 5))}
        for i in range(3):
            for j in range(3 - i):
                if i == j == 0:
                    continue
                c = rng.randint(-3, 3)
                if c:
                    coeffs[(i, j)] = GaussianRational(c, rng.randint(-1, 1))
        u = Jet2(EXACT, coeffs, 8)
        prod = jet_mul(u, jet_reciprocal(u))
        assert prod.equals(one)


# -- composition -----------------------------------------------------------------

def test_compose1_square_of_monomial():
    f = Jet1.from_coeffs({2: 1}, EXACT)
    g = jet_mul(x(), y())
    assert jet_compose1(f, g).coeffs == {(2, 2): GaussianRational(1)}


def test_compose1_affine():
    f = Jet1.from_coeffs({0: 1, 1: 1}, EXACT)
    g = jet_mul(jet_mul(x(), x()), y())
    out = jet_compose1(f, g)
    assert out.coeff(0, 0) == GaussianRational(1)
    assert out.coeff(2, 1) == GaussianRational(1)


def test_compose1_matches_oracle_expansion():
    # f = sum z^k against g = x + y, compared with direct expansion to degree 6
    f = Jet1.from_coeffs({k: 1 for k in range(7)}, EXACT, 6)
    g = (x(6) + y(6))
    out = jet_compose1(f, g)
    expected = oracles.p_compose1({k: oracles.gr(1) for k in range(7)},
                                  {(1, 0): oracles.gr(1), (0, 1): oracles.gr(1)}, 6)
    assert oracles.equal_to(out, expected, int(out.valid_through))


def test_compose1_rejects_nonzero_base_point():
    f = Jet1.from_coeffs({0: 1, 1: 1}, EXACT, 4)  # proper jet
    g = Jet2.const(1, EXACT, 4) + x(4)
    with pytest.raises(CompositionAtNonzeroPoint):
        jet_compose1(f, g)


# -- derivatives -------------------------------------------------------------------

def test_derive_examples():
    p = jet_mul(jet_mul(x(), x()), y())         # x^2 y
    assert jet_derive(p, "x").coeffs == {(1, 1): GaussianRational(2)}
    f = jet_mul(jet_mul(x(), y()), x() - y())   # xy(x-y)
    d = jet_derive(f, "y")
    # oracle: d/dy of x^2y - xy^2 = x^2 - 2xy
    assert d.coeffs == {(2, 0): GaussianRational(1), (1, 1): GaussianRational(-2)}
    assert jet_derive(Jet2.const(5, EXACT, 4), "x").is_zero()


def test_derive_precision_exhaustion():
    with pytest.raises(PrecisionExhausted):
        jet_derive(Jet2.const(1, EXACT, 0), "x")


# -- ring axioms (property) ----------------------------------------------------------

small_scalar = st.integers(min_value=-4, max_value=4)


@st.composite
def jets(draw, valid=6):
    coeffs = {}
    for i in range(3):
        for j in range(3 - i):
            re = draw(small_scalar)
            im = draw(small_scalar)
            if re or im:
                coeffs[(i, j)] = GaussianRational(re, im)
    return Jet2(EXACT, coeffs, valid)


@settings(max_examples=60, deadline=None)
@given(jets(), jets(), jets())
def test_ring_axioms(a, b, c):
    lhs = jet_mul(jet_mul(a, b), c)
    rhs = jet_mul(a, jet_mul(b, c))
    assert lhs.equals(rhs)
    lhs = jet_mul(a, b + c)
    rhs = jet_mul(a, b) + jet_mul(a, c)
    assert lhs.equals(rhs)
    assert jet_mul(a, b).equals(jet_mul(b, a))


# -- residues ------------------------------------------------------------------------

def test_residue_battery():
    assert laurent_residue(Jet1.from_coeffs({2: 1}, EXACT, 8)).is_zero()
    assert laurent_residue(Jet1.from_coeffs({1: 1}, EXACT, 8)) == GaussianRational(1)
    c = GaussianRational(Fraction(3, 2), Fraction(1, 3))
    h = Jet1.from_coeffs({2: 1, 3: c}, EXACT, 8)
    assert laurent_residue(h) == -c


def test_residue_higher_pole():
    # 1/(z^3 (1 + z)) = z^-3 (1 - z + z^2 - ...): residue = +1
    h = Jet1.from_coeffs({3: 1, 4: 1}, EXACT, 10)
    assert laurent_residue(h) == GaussianRational(1)


def test_residue_precision_exhausted():
    with pytest.raises(PrecisionExhausted):
        laurent_residue(Jet1.from_coeffs({2: 1, 3: 1}, EXACT, 2))


def test_residue_invariant_under_coordinate_change():
    # residue(dz/h) = residue(dw/h_hat) with z = phi(w), h_hat = h(phi)/phi'
    rng = random.Random(999)
    for _ in range(25):
        h = Jet1.from_coeffs(
            {2: rng.randint(1, 4), 3: rng.randint(-4, 4), 4: rng.randint(-4, 4),
             5: rng.randint(-4, 4)}, EXACT, 12)
        phi = Jet1.from_coeffs(
            {1: rng.randint(1, 3), 2: rng.randint(-3, 3), 3: rng.randint(-3, 3),
             4: rng.randint(-3, 3)}, EXACT, 12)
        transformed = _transform_1d(h, phi)
        assert laurent_residue(transformed) == laurent_residue(h)


def _transform_1d(h: Jet1, phi: Jet1) -> Jet1:
    """Coefficient of the pushed-forward field: h(phi(w)) / phi'(w)."""
    num = h.compose(phi)
    dphi = phi.derivative()
    # dphi is a unit (phi'(0) != 0)
    inv = dphi.reciprocal()
    return num * inv


# -- ODE solver -------------------------------------------------------------------------

def test_ode_zero_rhs():
    theta = Jet2.zero(EXACT, 10)
    u = series_ode_solve(theta, 8)
    assert u.equals(Jet2.variable("y", EXACT, 8))


def test_ode_exponential():
    theta = Jet2.variable("y", EXACT, 10)   # du/dx = u
    u = series_ode_solve(theta, 10)
    for k in range(9):
        expected = GaussianRational(Fraction(1, _factorial(k)))
        assert u.coeff(k, 1) == expected


def test_ode_residual_vanishes():
    rng = random.Random(77)
    coeffs = {}
    for i in range(3):
        for j in range(3 - i):
            coeffs[(i, j)] = GaussianRational(rng.randint(-2, 2))
    theta = Jet2(EXACT, coeffs, 10)
    u = series_ode_solve(theta, 8)
    assert ode_residual(theta, u, 8).is_zero()


def test_ode_straightening_monomial():
    # theta = -y^2 (the n=1, g2 = 1 leading term): u gains x y^2
    theta = -jet_mul(y(10), y(10))
    u = series_ode_solve(theta, 8)
    assert u.coeff(1, 2) == GaussianRational(-1)


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# -- exact division -------------------------------------------------------------------

def test_exact_divide_linear_form():
    n = jet_mul(x() - y(), x() + y())
    status, q = exact_divide(n, x() - y())
    assert status == DIVISIBLE
    assert q.equals(x() + y())


def test_exact_divide_obstruction():
    status, _ = exact_divide(x(), x() - y())
    assert status == NOT_DIVISIBLE


def test_exact_divide_polynomial_ring_semantics():
    one = Jet2.const(1, EXACT, INF)
    den = one + Jet2.variable("x", EXACT, INF)
    status, _ = exact_divide(one, den)
    assert status == NOT_DIVISIBLE  # 1/(1+x) is not a polynomial


def test_exact_divide_random_roundtrip():
    rng = random.Random(31)
    for _ in range(30):
        q = Jet2(EXACT, {(i, j): GaussianRational(rng.randint(-3, 3))
                         for i in range(3) for j in range(3 - i)}, INF)
        if q.is_zero():
            continue
        d = x(INF) - y(INF).scale(rng.randint(1, 3))
        n = jet_mul(q, d)
        status, q2 = exact_divide(n, d)
        assert status == DIVISIBLE
        assert q2.equals(q)
