"""Numerical flows: integrator properties, leaf tracking, period integrals."""

from __future__ import annotations

import cmath
import math
import random

import pytest

from germforge.errors import LeafEscape, StepFailure
from germforge.germ import VectorFieldGerm
from germforge.numflow import (
    LeafLoopSpec,
    TimePath,
    elliptic_loop,
    homothety_period_ratio,
    integrate_flow,
    integrate_flow_1d,
    leaf_period,
    replace_controls,
    richardson_check,
    siegel_loop,
    track_leaf,
)
from germforge.scalars import EXACT, FLOAT
from germforge.series import INF, Jet1, Jet2, jet_mul


def x():
    return Jet2.variable("x", EXACT, INF)


def y():
    return Jet2.variable("y", EXACT, INF)


def elliptic():
    return VectorFieldGerm(
        jet_mul(x(), x() - y().scale(2)), jet_mul(y(), y() - x().scale(2))
    ).to_float()


def test_riccati_closed_form():
    f = VectorFieldGerm(jet_mul(x(), x()), Jet2.zero(EXACT, INF))
    end = integrate_flow(f, (0.1, 0.0), TimePath.segment(0, 1, tol=1e-12))
    assert abs(end[0] - 1 / 9) < 1e-10


def test_linear_flow_periodicity():
    f = VectorFieldGerm(x(), Jet2.zero(EXACT, INF))
    end = integrate_flow(f, (1.0, 0.0), TimePath.segment(0, 2j * math.pi, tol=1e-12))
    assert abs(end[0] - 1.0) < 1e-10


def test_hirzebruch_flow_closed_form():
    # generator dx + (n+1) x^n dy for n = 1: (x0 + t, y0 + (x0+t)^2 - x0^2)
    f = VectorFieldGerm(Jet2.const(1, EXACT, INF), x().scale(2))
    x0, y0, t = 0.3, -0.2, 0.7
    end = integrate_flow(f, (x0, y0), TimePath.segment(0, t, tol=1e-12))
    assert abs(end[0] - (x0 + t)) < 1e-10
    assert abs(end[1] - (y0 + (x0 + t) ** 2 - x0 ** 2)) < 1e-10


def test_group_law_random_split_points():
    f = VectorFieldGerm(jet_mul(x(), x()) - y(), jet_mul(x(), y()).scale(-1))
    rng = random.Random(8)
    for _ in range(10):
        t = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
        s = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
        z0 = (rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2))
        whole = integrate_flow(f, z0, TimePath.segment(0, t + s, tol=1e-12))
        first = integrate_flow(f, z0, TimePath.segment(0, s, tol=1e-12))
        second = integrate_flow(f, first, TimePath.segment(0, t, tol=1e-12))
        assert abs(whole[0] - second[0]) < 1e-9
        assert abs(whole[1] - second[1]) < 1e-9


def test_step_failure_reports_partial():
    f = VectorFieldGerm(jet_mul(x(), x()), Jet2.zero(EXACT, INF))
    with pytest.raises(StepFailure):
        # blow-up of dz/dt = z^2 from z = 1 at t = 1
        integrate_flow(f, (1.0, 0.0), TimePath.segment(0, 1.5, tol=1e-10))


def test_identity_holonomy():
    f = VectorFieldGerm(x(), -y()).to_float()
    spec = siegel_loop(0.5, 0.05)
    assert abs(track_leaf(f, spec) - spec.seed) < 1e-9


def test_holonomy_single_valued_square_leaf():
    # x dx - 2y dy: leaves y = c/x^2 single-valued
    f = VectorFieldGerm(x(), y().scale(-2)).to_float()
    spec = siegel_loop(0.5, 0.1 * 0.5 ** 2)
    assert abs(track_leaf(f, spec) - spec.seed) < 1e-9


def test_leaf_escape():
    # leaf y = c/x^9 blows up as the loop dips toward small |x|
    f = VectorFieldGerm(x(), y().scale(-9)).to_float()
    spec = LeafLoopSpec(base_var="x", center=0.5, radius=0.3, winding=1,
                        seed=0.4, polydisc=2.0, tol=1e-10)
    with pytest.raises(LeafEscape):
        track_leaf(f, spec)


def test_period_zero_for_unimodular_pairing():
    f = VectorFieldGerm(jet_mul(x(), x()), -jet_mul(x(), y())).to_float()
    p, res = leaf_period(f, siegel_loop(0.5, 0.02, tol=1e-12))
    assert res.closed
    assert abs(p) < 1e-8


def test_period_matches_residue_for_zero_pairing():
    xy = jet_mul(x(), y())
    f = VectorFieldGerm(jet_mul(xy, x()), -jet_mul(xy, y())).to_float()
    for c in (0.02, 0.05j):
        p, res = leaf_period(f, siegel_loop(0.5, c, tol=1e-12))
        assert res.closed
        expected = 2j * math.pi / c
        assert abs(p - expected) / abs(expected) < 1e-8


def test_period_invariant_under_reparameterization():
    f = elliptic()
    spec = elliptic_loop(0.02, tol=1e-11)
    p1, _ = leaf_period(f, spec)
    p2, _ = leaf_period(f, replace_controls(spec, max_step=spec.max_step / 3))
    assert abs(p1 - p2) / abs(p1) < 1e-8


def test_elliptic_leaf_lift_closes():
    f = elliptic()
    for c in (0.02, 0.05j, -0.01 + 0.02j):
        _, res = leaf_period(f, elliptic_loop(c, tol=1e-12))
        assert res.closed


def test_homothety_law():
    f = elliptic()
    spec = elliptic_loop(0.02, tol=1e-12)
    for lam in (0.5, 0.3 + 0.1j, 2.0):
        rep = homothety_period_ratio(f, spec, lam)
        assert rep.defect < 1e-6


def test_homothety_requires_quadratic():
    f = VectorFieldGerm(x(), -y()).to_float()
    with pytest.raises(ValueError):
        homothety_period_ratio(f, siegel_loop(0.5, 0.02), 0.5)


def test_elliptic_period_scaling_across_leaves():
    # |period(c1)/period(c2)| = |c2/c1|^(1/3): the homothety moves leaf c to
    # lambda^3 c and scales periods by 1/lambda
    f = elliptic()
    c1 = 0.02
    for c2 in (0.05j, 0.04, -0.03):
        p1, _ = leaf_period(f, elliptic_loop(c1, tol=1e-12))
        mu = (complex(c2) / c1) ** (1.0 / 3.0)
        scaled_spec = elliptic_loop(c1, tol=1e-12).scaled(mu)
        p2, res = leaf_period(f, scaled_spec)
        assert res.closed
        assert abs(abs(p1) / abs(p2) - abs(c2 / c1) ** (1 / 3)) < 1e-5


def test_parabolic_negative_control():
    # row-2 leaves are rational graphs y = cx/(x^2+c): lifts close, period 0
    f = VectorFieldGerm(jet_mul(x(), x()), -jet_mul(y(), x() - y().scale(2))).to_float()
    c = 0.02
    x0 = 0.5
    seed = c * x0 / (x0 ** 2 + c)
    spec = LeafLoopSpec(base_var="x", center=0j, radius=x0, winding=1,
                        seed=seed, tol=1e-12)
    p, res = leaf_period(f, spec)
    assert res.closed
    assert abs(p) < 1e-8


def test_richardson_self_consistency():
    f = elliptic()

    def run(tol, max_step):
        p, _ = leaf_period(f, replace_controls(elliptic_loop(0.02), tol=tol,
                                               max_step=max_step))
        return p

    v1, v2, gap = richardson_check(run, 1e-9, 0.02)
    assert gap <= 10 * 1e-9 * abs(v2)


def test_integrate_flow_1d_riccati():
    h = Jet1.from_coeffs({2: 2j * math.pi}, FLOAT, 8)
    z0 = 0.05
    end = integrate_flow_1d(h, z0, TimePath.segment(0, 1, tol=1e-12))
    expected = z0 / (1 - 2j * math.pi * z0)
    assert abs(end - expected) < 1e-10
