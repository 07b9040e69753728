"""Catalog constructors, parameter validation, invariants, classifier."""

from __future__ import annotations

from fractions import Fraction

import pytest

from germforge.catalog import (
    NormalFormID,
    classify,
    classify_with_reasons,
    extract_invariants,
    first_integral,
    make_normal_form,
    make_pair,
    parse_id,
)
from germforge.errors import BadParams, NonzeroEigenvalue
from germforge.germ import RationalFn, VectorFieldGerm, derive_along, lie_bracket
from germforge.scalars import EXACT, GaussianRational
from germforge.series import INF, Jet1, Jet2, jet_mul

GR = GaussianRational


def test_row2_exact_form():
    x = make_normal_form(NormalFormID("table", "2", {"n": 1}), EXACT, 12)
    assert x.a.coeffs == {(2, 0): GR(1)}
    assert x.b.coeffs == {(1, 1): GR(-1), (0, 2): GR(2)}


def test_row7_exact_form():
    x = make_normal_form(NormalFormID("table", "7", {"a": 0}), EXACT, 12)
    assert x.a.coeffs == {(0, 1): GR(2)}
    assert x.b.coeffs == {(2, 0): GR(-3)}


def test_row12_constraint():
    x = make_normal_form(
        NormalFormID("table", "12", {"m": 2, "n": 1, "a": 1, "b": 1}), EXACT, 12)
    assert x.a.coeffs == {(2, 1): GR(2)}
    assert x.b.coeffs == {(1, 2): GR(-1)}
    with pytest.raises(BadParams):
        make_normal_form(
            NormalFormID("table", "12", {"m": 1, "n": 1, "a": 1, "b": 1}), EXACT, 12)


def test_row_constraint_errors_are_named():
    with pytest.raises(BadParams, match="a != 0"):
        make_normal_form(NormalFormID("table", "1a", {"a": 0}), EXACT, 8)
    with pytest.raises(BadParams, match="g1"):
        make_normal_form(
            NormalFormID("table", "1c", {"a": 1},
                         {"g1": Jet1.const(1, EXACT), "g2": Jet1.zero(EXACT)}),
            EXACT, 8)
    with pytest.raises(BadParams, match="n in Z"):
        make_normal_form(NormalFormID("table", "11", {"n": 0}), EXACT, 8)


def test_pair_constructor_rejects_vii_violation():
    with pytest.raises(BadParams, match="am - bn"):
        make_pair(NormalFormID("mt", "vii", {"m": 1, "n": 1, "a": 1, "b": 1}),
                  EXACT, 8)


def test_pair_mt_i_spec_instance():
    x, y = make_pair(NormalFormID("mt", "i", {"n": 1, "alpha": 1}), EXACT, 10)
    assert x.a.coeffs == {(0, 1): GR(1)}
    assert x.b.is_zero()
    # Y = y((1+x) dx + y dy)
    assert y.a.coeffs == {(0, 1): GR(1), (1, 1): GR(1)}
    assert y.b.coeffs == {(0, 2): GR(1)}


def test_pair_mt_vi():
    x, y = make_pair(NormalFormID("mt", "vi"), EXACT, 10)
    assert x.a.coeffs == {(0, 1): GR(1), (2, 0): GR(-2)}
    assert x.b.coeffs == {(1, 1): GR(-2)}
    assert y.a.coeffs == {(1, 1): GR(1)}
    assert y.b.coeffs == {(0, 2): GR(1)}
    assert lie_bracket(x, y).is_zero()


def test_every_family_commutes():
    cases = [
        NormalFormID("mt", "i", {"n": 2, "alpha": GR(1, 1)},
                     {"r": Jet1.from_coeffs({2: 1}, EXACT),
                      "s": Jet1.from_coeffs({1: -1, 3: 1}, EXACT)}),
        NormalFormID("mt", "ii"),
        NormalFormID("mt", "iii", {"n": 3}),
        NormalFormID("mt", "iii", {"n": 1, "c1": GR(0, 1), "c2": 2}),
        NormalFormID("mt", "iv", {"n": 2},
                     {"g1": Jet1.from_coeffs({0: 1, 2: 1}, EXACT),
                      "g2": Jet1.from_coeffs({1: 2}, EXACT)}),
        NormalFormID("mt", "v", {"n": 0}),
        NormalFormID("mt", "vii", {"m": 2, "n": 1, "a": 1, "b": 1, "k1": 1}),
    ]
    for nf in cases:
        x, y = make_pair(nf, EXACT, 12)
        assert lie_bracket(x, y).is_zero(), nf.label()


def test_mt_vii_records_decomposition():
    nf = NormalFormID("mt", "vii", {"m": 3, "n": 2, "a": 1, "b": 2})
    make_pair(nf, EXACT, 10)
    assert nf.params["sign"] == -1
    assert (nf.params["a_mu"], nf.params["b_mu"]) == (1, 2)
    nf = NormalFormID("mt", "vii", {"m": 1, "n": 1, "a": 2, "b": 1})
    make_pair(nf, EXACT, 10)
    assert nf.params["sign"] == 1
    assert (nf.params["a_mu"], nf.params["b_mu"]) == (1, 0)


def test_mt_vii_perturbation_is_holomorphic_order_one():
    nf = NormalFormID("mt", "vii", {"m": 2, "n": 1, "a": 1, "b": 1},
                      {"u2": Jet1.from_coeffs({1: 1, 2: 1}, EXACT)})
    x, y = make_pair(nf, EXACT, 12)
    # Y/u1 - X must vanish to order >= order(X) + 1
    diff = y - x
    assert diff.order() > x.order()


def test_first_integrals_match_fields():
    for row in ("4", "5", "6", "7", "8", "9"):
        nf = NormalFormID("table", row, {"a": 1})
        x = make_normal_form(nf, EXACT, 14)
        fi = first_integral(nf, EXACT)
        assert derive_along(x, fi.truncate(14)).is_zero(), row


def test_row9_integral_is_the_squared_cusp():
    fi = first_integral(NormalFormID("table", "9"), EXACT)
    # y(y - x^2)^2 = y^3 - 2x^2y^2 + x^4y
    assert fi.coeffs == {
        (0, 3): GR(1), (2, 2): GR(-2), (4, 1): GR(1),
    }


def test_invariants_examples():
    x = Jet2.variable("x", EXACT, INF)
    y = Jet2.variable("y", EXACT, INF)
    xy = jet_mul(x, y)
    inv = extract_invariants(VectorFieldGerm(jet_mul(xy, x), -jet_mul(xy, y)))
    assert inv.order == 3
    assert (inv.divisor_x, inv.divisor_y) == (1, 1)
    assert inv.primitive_linear.eigenvalues == (GR(1), GR(-1))
    assert not inv.nilpotent

    row3 = make_normal_form(NormalFormID("table", "3"), EXACT, INF)
    inv = extract_invariants(row3)
    assert inv.order == 1 and inv.nilpotent

    radial = VectorFieldGerm(jet_mul(y, x.scale(2)), jet_mul(y, y))
    inv = extract_invariants(radial)
    assert (inv.divisor_x, inv.divisor_y) == (0, 1)
    assert inv.primitive_linear.eigenvalues == (GR(2), GR(1))


def test_classifier_examples():
    row2 = make_normal_form(NormalFormID("table", "2", {"n": 1}), EXACT, INF)
    assert [c.name for c in classify(row2)] == ["2"]

    x = Jet2.variable("x", EXACT, INF)
    cubic = VectorFieldGerm(jet_mul(jet_mul(x, x), x), Jet2.zero(EXACT, INF))
    cands, reasons = classify_with_reasons(cubic)
    assert cands == [] and "order>2" in reasons[0]

    row4 = make_normal_form(NormalFormID("table", "4", {"a": 1}), EXACT, INF)
    hits = classify(row4)
    assert any(c.name == "4" and c.params.get("a") == 1 for c in hits)


def test_classifier_requires_zero_eigenvalues():
    x = Jet2.variable("x", EXACT, INF)
    with pytest.raises(NonzeroEigenvalue):
        classify(VectorFieldGerm(x, Jet2.zero(EXACT, INF)))


def test_classifier_swapped_orientation():
    y = Jet2.variable("y", EXACT, INF)
    x = Jet2.variable("x", EXACT, INF)
    swapped_11 = VectorFieldGerm(jet_mul(y, x.scale(2)), jet_mul(y, y))
    hits = classify(swapped_11)
    assert any(c.name == "11" and c.params.get("n") == 2 for c in hits)


def test_classifier_sound_on_unit_factors():
    x = Jet2.variable("x", EXACT, INF)
    y = Jet2.variable("y", EXACT, INF)
    f = Jet2.const(1, EXACT, INF) + x + jet_mul(x, y).scale(3)
    nf = NormalFormID("table", "4", {"a": 1}, {"f": f})
    germ = make_normal_form(nf, EXACT, INF)
    assert any(c.name == "4" for c in classify(germ))


def test_id_string_roundtrip():
    for text in ("table:2[n=1]", "mt:vii[a=1,b=1,k1=0,m=2,n=1]", "mt:vi",
                 "table:10[lambda=1/2,m=2,n=1,p=1]"):
        nf = parse_id(text)
        assert parse_id(nf.label()).label() == nf.label()
    with pytest.raises(BadParams):
        parse_id("table:99")
    with pytest.raises(BadParams):
        parse_id("mt:vii[m=")
