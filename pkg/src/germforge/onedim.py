"""One-dimensional semicompleteness screens and the regular-foliation criterion.

A 1-D germ h(z) dz passes the necessary conditions when its order is at
most 1, or equals 2 with vanishing residue of dz/h; order 3 and up, or a
nonzero residue, are definitive failures with a concrete witness.

The straightening construction realizes the change (x, y) = (x, u(x, ybar))
sending horizontal lines to leaves, and the Siegel regular test decides
semicompleteness of g1(xy^n) y^n x^2 [dx + y^(n+1) g2(xy^n)(nx dx - y dy)]
by the absence of x*ybar^k monomials, cross-checkable against the closed
criterion g1'(0) = g2(0) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from . import scalars
from .errors import AxisNotInvariant, PrecisionExhausted
from .germ import VectorFieldGerm
from .scalars import Scalar
from .series import (
    INF,
    Jet1,
    Jet2,
    jet_compose1,
    jet_mul,
    jet_reciprocal,
    laurent_residue,
    series_ode_solve,
)

PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown"


@dataclass
class SemicompleteVerdict:
    status: str
    reason: Optional[str] = None
    witness: object = None

    def __bool__(self):
        return self.status == PASS


def onedim_check(h: Jet1, tol: float = 0.0) -> SemicompleteVerdict:
    """Necessary conditions of the one-dimensional lemma.

    order <= 1 passes; order 2 requires residue zero; order >= 3 fails.
    Precision exhaustion surfaces as status "unknown", never a silent pass.
    """
    order = h.order()
    if order == INF:
        if h.valid_through == INF or h.valid_through >= 3:
            return SemicompleteVerdict(PASS, "identically-zero")
        return SemicompleteVerdict(UNKNOWN, "precision", h.valid_through)
    if order <= 1:
        return SemicompleteVerdict(PASS, f"order<={int(order)}")
    if order >= 3:
        return SemicompleteVerdict(FAIL, "order>2", int(order))
    try:
        res = laurent_residue(h)
    except PrecisionExhausted:
        return SemicompleteVerdict(UNKNOWN, "precision")
    if scalars.is_zero_scalar(res, h.mode, tol):
        return SemicompleteVerdict(PASS, "zero-residue")
    return SemicompleteVerdict(FAIL, "nonzero-residue", res)


def restrict_to_axis(x: VectorFieldGerm, axis: str) -> Jet1:
    """1-D germ of X along an invariant coordinate axis.

    Axis "x" ({y=0}) needs the dy component divisible by y; the restriction
    is then A(z, 0).  Symmetrically for axis "y".
    """
    if axis == "x":
        if any(j == 0 for (_, j) in x.b.coeffs):
            raise AxisNotInvariant("dy component not divisible by y")
        return x.a.restrict_y0()
    if axis == "y":
        if any(i == 0 for (i, _) in x.a.coeffs):
            raise AxisNotInvariant("dx component not divisible by x")
        return x.b.restrict_x0()
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def invariant_axes(x: VectorFieldGerm) -> Tuple[str, ...]:
    out = []
    if all(j >= 1 for (_, j) in x.b.coeffs):
        out.append("x")
    if all(i >= 1 for (i, _) in x.a.coeffs):
        out.append("y")
    return tuple(out)


def straightening_theta(g2: Jet1, n: int, degree: int) -> Jet2:
    """Theta = -y^(n+1) g2(xy^n) / (1 + n x y^n g2(xy^n)) to the given degree."""
    mode = g2.mode
    x = Jet2.variable("x", mode, INF)
    y = Jet2.variable("y", mode, INF)
    w = jet_mul(x, _power(y, n)).truncate(degree)
    g2_w = jet_compose1(g2.truncate(degree), w).truncate(degree)
    y_n1 = _power(y, n + 1).truncate(degree)
    num = (-jet_mul(y_n1, g2_w)).truncate(degree)
    den = (Jet2.const(1, mode, degree)
           + jet_mul(jet_mul(x, _power(y, n)), g2_w).scale(n)).truncate(degree)
    return jet_mul(num, jet_reciprocal(den)).truncate(degree)


def _power(jet: Jet2, e: int) -> Jet2:
    out = Jet2.const(1, jet.mode, INF)
    for _ in range(e):
        out = jet_mul(out, jet)
    return out


def straighten_regular(g1: Jet1, g2: Jet1, n: int, degree: int
                       ) -> Tuple[Jet2, Jet2]:
    """Straightening solution u and the normalized unit defect beta.

    u solves du/dx = Theta(x, u), u(0, y) = y; beta is defined through
    1 + beta = g1[x u^n] (u/y)^n.
    """
    if not scalars.is_zero_scalar(
        g1.coeff(0) - scalars.one(g1.mode), g1.mode
    ):
        raise ValueError("straighten_regular requires g1(0) = 1")
    theta = straightening_theta(g2, n, degree)
    u = series_ode_solve(theta, degree)
    x = Jet2.variable("x", g1.mode, INF)
    u_over_y = u.divide_monomial(0, 1)  # u(x, 0) = 0, so u = y * (unit)
    u_n = _power(u, n).truncate(degree)
    g1_arg = jet_mul(x, u_n).truncate(degree)
    g1_comp = jet_compose1(g1.truncate(degree), g1_arg)
    one_plus_beta = jet_mul(g1_comp, _power(u_over_y, n)).truncate(degree)
    beta = one_plus_beta - Jet2.const(1, g1.mode, degree)
    return u, beta


def siegel_regular_test(g1: Jet1, g2: Jet1, n: int, degree: int,
                        tol: float = 0.0) -> SemicompleteVerdict:
    """Semicompleteness of the Siegel-regular family via monomial absence.

    Pass iff neither the straightened unit 1 + beta nor the straightening
    solution u carries a monomial x^1 y^k; the pair of conditions is
    equivalent to the closed criterion g1'(0) = g2(0) = 0.  Failures carry
    the witness monomial (the u-witness x y^(n+1) when g2(0) != 0, else the
    beta-witness x y^n).
    """
    if degree < n + 2:
        return SemicompleteVerdict(UNKNOWN, "precision")
    u, beta = straighten_regular(g1, g2, n, degree)
    u_witness = _first_x_linear_monomial(u, tol)
    if u_witness is not None:
        return SemicompleteVerdict(FAIL, "witness-monomial", u_witness)
    beta_witness = _first_x_linear_monomial(beta, tol)
    if beta_witness is not None:
        return SemicompleteVerdict(FAIL, "witness-monomial", beta_witness)
    return SemicompleteVerdict(PASS, "no-x-linear-monomials")


def _first_x_linear_monomial(jet: Jet2, tol: float):
    hits = [
        (i, j) for (i, j), v in jet.coeffs.items()
        if i == 1 and not scalars.is_zero_scalar(v, jet.mode, tol)
    ]
    return min(hits, key=lambda k: k[1]) if hits else None


def closed_criterion(g1: Jet1, g2: Jet1) -> bool:
    """g1'(0) = g2(0) = 0 (the closed-form statement of the same lemma)."""
    d1 = g1.coeff(1) if g1.valid_through >= 1 else None
    c2 = g2.coeff(0)
    if d1 is None:
        raise PrecisionExhausted("g1 not known to degree 1")
    return scalars.is_zero_scalar(d1, g1.mode) and scalars.is_zero_scalar(c2, g2.mode)
