"""Martinet-Ramis forms: contraction identity, resonance, linearization, periods."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest

from germforge import numflow
from germforge.errors import BadParams
from germforge.germ import VectorFieldGerm, pullback
from germforge.mr import (
    MRFormalForm,
    contract_mr_form,
    holonomy_model,
    linearize,
    mr_formal_vf,
    mr_leaf_period,
    resonant_monomials,
)
from germforge.numflow import LeafLoopSpec, TimePath, integrate_flow_1d, track_leaf
from germforge.scalars import EXACT, FLOAT, GaussianRational
from germforge.series import INF, Jet1, Jet2, jet_mul

GR = GaussianRational


def test_formal_vf_lambda_zero():
    vf = mr_formal_vf(MRFormalForm(1, 1, 1, 0), EXACT, 10)
    assert vf.a.coeffs == {(1, 0): GR(1)}
    assert vf.b.coeffs == {(0, 1): GR(-1), (1, 2): GR(1)}  # -y(1 - xy)


def test_contraction_identity_grid():
    for m, n in ((1, 1), (2, 1), (1, 2), (3, 2)):
        for p in (1, 2):
            for lam in (GR(0), GR(1), GR(Fraction(1, 3), Fraction(1, 2))):
                form = MRFormalForm(m, n, p, lam)
                vf = mr_formal_vf(form, EXACT, 12)
                assert contract_mr_form(form, vf, EXACT).is_zero()


def test_formal_vf_exponent_convention():
    # (m, n) = (2, 1): the invariant is x^n y^m = x y^2
    vf = mr_formal_vf(MRFormalForm(2, 1, 2, GR(1)), EXACT, 12)
    # dx component: 2x(1 + (xy^2)^2) -> monomial x^3 y^4
    assert vf.a.coeff(3, 4) == GR(2)
    assert vf.a.coeff(1, 0) == GR(2)


def test_holonomy_model_examples():
    h = holonomy_model(1, 1, 0.0, 8)
    assert abs(h.coeffs[2] - 2j * math.pi) < 1e-14
    assert set(h.coeffs) == {2}
    h = holonomy_model(1, 1, 1.0, 6)
    # 2 pi i z^2 (1 - z + z^2 - ...)
    assert abs(h.coeffs[3] + 2j * math.pi) < 1e-14
    assert abs(h.coeffs[4] - 2j * math.pi) < 1e-14


def test_holonomy_model_time_one_closed_form():
    h = holonomy_model(1, 1, 0.0, 8)
    z0 = 0.05
    end = integrate_flow_1d(h, z0, TimePath.segment(0, 1, tol=1e-12))
    assert abs(end - z0 / (1 - 2j * math.pi * z0)) < 1e-10


def test_resonant_monomials_eigenvalue_relation():
    data = resonant_monomials(1, 1, 5)
    assert data.dx_monomials == [(2, 1), (3, 2)]
    assert data.dy_monomials == [(1, 2), (2, 3)]
    data = resonant_monomials(2, 1, 6)
    # relation k1 m - k2 n = m: (k1 - 1) 2 = k2: x^2y^2, x^3y^4 (degree 7 > 6)
    assert data.dx_monomials == [(2, 2)]
    assert data.dy_monomials == [(1, 3)]
    for (i, j) in data.dx_monomials:
        assert i * 2 - j * 1 == 2
    for (i, j) in data.dy_monomials:
        assert i * 2 - j * 1 == -1


def test_unimodular_perturbations_never_resonant():
    for (m, n, amu, bmu) in ((1, 1, 1, 0), (2, 1, 1, 1), (3, 2, 1, 2)):
        assert amu * m - bmu * n in (1, -1)
        data = resonant_monomials(m, n, 14)
        for j in range(1, 4):
            dx_mono = (1 + j * n - amu, j * m - bmu)
            dy_mono = (j * n - amu, 1 + j * m - bmu)
            assert dx_mono not in data.dx_monomials
            assert dy_mono not in data.dy_monomials


def test_linearize_removes_nonresonant_term():
    x = Jet2.variable("x", EXACT, INF)
    y = Jet2.variable("y", EXACT, INF)
    f = VectorFieldGerm(x + jet_mul(jet_mul(x, x), x), -y).truncate(8)
    result = linearize(f, 8)
    assert result.obstruction is None
    assert result.linearized.a.truncate(7).equals(x.truncate(7))


def test_linearize_reports_resonant_obstruction():
    x = Jet2.variable("x", EXACT, INF)
    y = Jet2.variable("y", EXACT, INF)
    f = VectorFieldGerm(x + jet_mul(jet_mul(x, x), y), -y).truncate(8)
    result = linearize(f, 8)
    assert result.obstruction == (2, 1, "x")
    # the resonant term survives in the normal form
    assert result.linearized.a.coeff(2, 1) == GR(1)


def test_linearize_requires_siegel_diagonal():
    x = Jet2.variable("x", EXACT, INF)
    y = Jet2.variable("y", EXACT, INF)
    with pytest.raises(BadParams):
        linearize(VectorFieldGerm(x + y, -y).truncate(8), 8)


def test_linearize_conjugation_soundness():
    x = Jet2.variable("x", EXACT, INF)
    y = Jet2.variable("y", EXACT, INF)
    w = jet_mul(x, y)
    pert = jet_mul(jet_mul(y, y), jet_mul(x, y))  # x y^3: gap 1-3+1 = -1
    f = VectorFieldGerm(x + jet_mul(w, w), -y - pert).truncate(10)
    result = linearize(f, 10)
    model = VectorFieldGerm(x, -y).truncate(10)
    # the recorded change conjugates the linear model back to the input
    back = pullback(model, result.change.inverse(10))
    assert back.truncate(9).equals(f.truncate(9))


def test_mr_leaf_period_constant_unit():
    one = Jet2.const(1, FLOAT, INF)
    p = mr_leaf_period(1, one, 1, 1, (0.1, 0.2))
    expected = 2j * math.pi / 0.02
    assert abs(p - expected) / abs(expected) < 1e-10


def test_mr_leaf_period_leaf_dependence_witness():
    f = Jet2.const(1, FLOAT, INF) + Jet2.variable("x", FLOAT, INF)
    p1 = mr_leaf_period(1, f, 1, 1, (0.1, 0.2))
    p2 = mr_leaf_period(1, f, 1, 1, (0.15, 0.2))
    assert abs(p1 - p2) > 1e-6


def test_mr_leaf_period_same_leaf_same_value():
    one = Jet2.const(1, FLOAT, INF)
    p1 = mr_leaf_period(1, one, 1, 1, (0.1, 0.2))
    p2 = mr_leaf_period(1, one, 1, 1, (0.2, 0.1))
    assert abs(p1 - p2) < 1e-10


def test_period_dichotomy_against_divisor_pairing():
    # x^a y^b (m x dx - n y dy): vanishing periods iff am - bn = +-1
    one = Jet2.const(1, FLOAT, INF)
    two_pi_i = 2j * math.pi
    # am - bn = 0 (k = 1, m = n = 1): period = 2 pi i / (x0 y0)
    p = mr_leaf_period(1, one, 1, 1, (0.1, 0.3))
    assert abs(p - two_pi_i / 0.03) < 1e-8
    # am - bn = +-1 corresponds to integrating e^(-T): done at field level
    x = Jet2.variable("x", EXACT, INF)
    y = Jet2.variable("y", EXACT, INF)
    f = VectorFieldGerm(jet_mul(x, x), -jet_mul(x, y)).to_float()
    period, _ = numflow.leaf_period(f, numflow.siegel_loop(0.4, 0.02, tol=1e-12))
    assert abs(period) < 1e-8


def test_tracked_holonomy_matches_model():
    for lam in (0.0, 0.3):
        field = mr_formal_vf(MRFormalForm(1, 1, 1, lam), FLOAT, 12)

        def tracker(z0):
            spec = LeafLoopSpec(base_var="x", center=0j, radius=1.0, winding=1,
                                seed=z0, tol=1e-12, max_step=0.02, polydisc=8.0)
            return track_leaf(field, spec)

        model = holonomy_model(1, 1, lam, 12)
        tracked = tracker(0.05)
        time_one = integrate_flow_1d(model, 0.05, TimePath.segment(0, 1, tol=1e-12))
        assert abs(tracked - time_one) < 1e-5
        c2 = numflow.holonomy_taylor_coefficient(tracker, 2, radius=0.03)
        assert abs(c2 - 2j * math.pi) < 1e-4
