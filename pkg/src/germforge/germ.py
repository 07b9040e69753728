"""Vector field germs on (C^2, 0): bracket, decomposition, coordinate changes.

A germ is a pair of Jet2 components A dx + B dy with shared precision and
scalar mode.  Meromorphic quotients live in RationalFn (formal num/den with
a divisibility-based holomorphy test).  Coordinate changes come in two
kinds: series (tangent to identity up to an invertible linear part) and
rational charts (Laurent-monomial maps such as (x,y) = (1/u, v/u)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import scalars, series
from .errors import (
    DegenerateFrame,
    NonInvertibleChange,
    PoleAtOrigin,
    PrecisionExhausted,
)
from .scalars import EXACT, GaussianRational, Scalar
from .series import INF, Jet1, Jet2, exact_divide, jet_compose2, jet_derive, jet_mul


class VectorFieldGerm:
    """A dx + B dy with shared valid_through and mode."""

    __slots__ = ("a", "b")

    def __init__(self, a: Jet2, b: Jet2):
        scalars.check_same_mode(a.mode, b.mode)
        valid = min(a.valid_through, b.valid_through)
        self.a = a.truncate(valid)
        self.b = b.truncate(valid)

    @property
    def mode(self) -> str:
        return self.a.mode

    @property
    def valid_through(self):
        return self.a.valid_through

    def order(self):
        return min(self.a.order(), self.b.order())

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.a.is_zero(tol) and self.b.is_zero(tol)

    def equals(self, other: "VectorFieldGerm", tol: float = 0.0) -> bool:
        return self.a.equals(other.a, tol) and self.b.equals(other.b, tol)

    def __add__(self, other: "VectorFieldGerm") -> "VectorFieldGerm":
        return VectorFieldGerm(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "VectorFieldGerm") -> "VectorFieldGerm":
        return VectorFieldGerm(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "VectorFieldGerm":
        return VectorFieldGerm(-self.a, -self.b)

    def scale(self, value) -> "VectorFieldGerm":
        return VectorFieldGerm(self.a.scale(value), self.b.scale(value))

    def mul_jet(self, f: Jet2) -> "VectorFieldGerm":
        return VectorFieldGerm(jet_mul(f, self.a), jet_mul(f, self.b))

    def truncate(self, valid) -> "VectorFieldGerm":
        return VectorFieldGerm(self.a.truncate(valid), self.b.truncate(valid))

    def swap_axes(self) -> "VectorFieldGerm":
        """The germ in coordinates (x, y) -> (y, x)."""
        sw = lambda jet: Jet2(jet.mode, {(j, i): v for (i, j), v in jet.coeffs.items()},
                              jet.valid_through)
        return VectorFieldGerm(sw(self.b), sw(self.a))

    def to_float(self) -> "VectorFieldGerm":
        return VectorFieldGerm(self.a.to_float(), self.b.to_float())

    def __repr__(self):
        return f"VectorFieldGerm(A={self.a!r}, B={self.b!r})"


class RationalFn:
    """Formal quotient num/den of jets, den != 0."""

    __slots__ = ("num", "den", "reduced")

    def __init__(self, num: Jet2, den: Jet2, reduced: bool = False):
        scalars.check_same_mode(num.mode, den.mode)
        if den.is_zero():
            raise ZeroDivisionError("RationalFn with zero denominator")
        self.num = num
        self.den = den
        self.reduced = reduced

    @property
    def mode(self):
        return self.num.mode

    @classmethod
    def from_jet(cls, jet: Jet2) -> "RationalFn":
        return cls(jet, Jet2.const(1, jet.mode, INF), reduced=True)

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(
            jet_mul(self.num, other.den) + jet_mul(other.num, self.den),
            jet_mul(self.den, other.den),
        )

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return self + (-other)

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den, self.reduced)

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(jet_mul(self.num, other.num), jet_mul(self.den, other.den))

    def mul_jet(self, f: Jet2) -> "RationalFn":
        return RationalFn(jet_mul(self.num, f), self.den)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.num.is_zero(tol)

    def equals(self, other: "RationalFn", tol: float = 0.0) -> bool:
        # cross-multiplied identity, exact in exact mode
        lhs = jet_mul(self.num, other.den)
        rhs = jet_mul(other.num, self.den)
        return lhs.equals(rhs, tol)

    def holomorphic_part(self) -> Tuple[str, Optional[Jet2]]:
        """Exact division num/den: (status, quotient-or-None).

        Status is series.DIVISIBLE / NOT_DIVISIBLE / UNKNOWN; inconclusive
        divisions are reported UNKNOWN, never as a definite no.
        """
        return exact_divide(self.num, self.den)

    def reduce(self) -> "RationalFn":
        """Cancel the denominator into the numerator when possible."""
        if self.reduced:
            return self
        status, quot = exact_divide(self.num, self.den)
        if status == series.DIVISIBLE and quot is not None:
            return RationalFn(quot, Jet2.const(1, self.mode, INF), reduced=True)
        return self

    def __repr__(self):
        return f"RationalFn({self.num!r} / {self.den!r})"


# ---------------------------------------------------------------------------
# Lie bracket and directional derivatives
# ---------------------------------------------------------------------------

def derive_along(x: VectorFieldGerm, f):
    """Directional derivative A df/dx + B df/dy; zero certifies a first integral.

    Accepts a Jet2 (returns Jet2) or a RationalFn (returns RationalFn via the
    quotient rule, so poles are handled formally).
    """
    if isinstance(f, RationalFn):
        num = f.num
        den = f.den
        d_num = derive_along(x, num)
        d_den = derive_along(x, den)
        return RationalFn(
            jet_mul(d_num, den) - jet_mul(num, d_den),
            jet_mul(den, den),
        )
    fx = jet_derive(f, "x")
    fy = jet_derive(f, "y")
    return jet_mul(x.a, fx) + jet_mul(x.b, fy)


def lie_bracket(x: VectorFieldGerm, y: VectorFieldGerm) -> VectorFieldGerm:
    """[X, Y] = (X.C - Y.A) dx + (X.D - Y.B) dy."""
    scalars.check_same_mode(x.mode, y.mode)
    return VectorFieldGerm(
        derive_along(x, y.a) - derive_along(y, x.a),
        derive_along(x, y.b) - derive_along(y, x.b),
    )


def decompose(z: VectorFieldGerm, x: VectorFieldGerm, y: VectorFieldGerm
              ) -> Tuple[RationalFn, RationalFn]:
    """Meromorphic f, g with Z = f X + g Y against a generically independent frame.

    f = (PD - QC)/(AD - BC), g = (QA - PB)/(AD - BC).
    """
    a, b = x.a, x.b
    c, d = y.a, y.b
    p, q = z.a, z.b
    det = jet_mul(a, d) - jet_mul(b, c)
    if det.is_zero():
        raise DegenerateFrame("AD - BC vanishes at available precision")
    f = RationalFn(jet_mul(p, d) - jet_mul(q, c), det)
    g = RationalFn(jet_mul(q, a) - jet_mul(p, b), det)
    return f, g


# ---------------------------------------------------------------------------
# coordinate changes
# ---------------------------------------------------------------------------

class LaurentPoly2:
    """Exact Laurent polynomial in two variables (chart arithmetic helper)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[Tuple[int, int], GaussianRational]):
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}

    @classmethod
    def monomial(cls, i: int, j: int, value=1) -> "LaurentPoly2":
        return cls({(i, j): GaussianRational.from_value(value)})

    @classmethod
    def from_jet(cls, jet: Jet2) -> "LaurentPoly2":
        if jet.mode != EXACT:
            raise ValueError("LaurentPoly2 requires exact scalars")
        return cls(dict(jet.coeffs))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, GaussianRational(0)) + v
        return LaurentPoly2(out)

    def __sub__(self, other):
        return self + other.scale(GaussianRational(-1))

    def __mul__(self, other):
        out: Dict[Tuple[int, int], GaussianRational] = {}
        for (i1, j1), u in self.coeffs.items():
            for (i2, j2), v in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, GaussianRational(0)) + u * v
        return LaurentPoly2(out)

    def scale(self, s) -> "LaurentPoly2":
        s = GaussianRational.from_value(s)
        return LaurentPoly2({k: v * s for k, v in self.coeffs.items()})

    def substitute_monomials(self, mx: "LaurentPoly2", my: "LaurentPoly2") -> "LaurentPoly2":
        """Evaluate at x = mx, y = my where both are single Laurent monomials."""
        (xi, xj), xv = next(iter(mx.coeffs.items()))
        (yi, yj), yv = next(iter(my.coeffs.items()))
        out: Dict[Tuple[int, int], GaussianRational] = {}
        for (i, j), v in self.coeffs.items():
            key = (i * xi + j * yi, i * xj + j * yj)
            term = v * _pow_gr(xv, i) * _pow_gr(yv, j)
            out[key] = out.get(key, GaussianRational(0)) + term
        return LaurentPoly2(out)

    def derivative(self, var: int) -> "LaurentPoly2":
        out = {}
        for (i, j), v in self.coeffs.items():
            e = (i, j)[var]
            if e != 0:
                key = (i - 1, j) if var == 0 else (i, j - 1)
                out[key] = v * GaussianRational(e)
        return LaurentPoly2(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_exponents(self) -> Tuple[int, int]:
        if not self.coeffs:
            return (0, 0)
        return (min(i for i, _ in self.coeffs), min(j for _, j in self.coeffs))

    def shift(self, di: int, dj: int) -> "LaurentPoly2":
        return LaurentPoly2({(i + di, j + dj): v for (i, j), v in self.coeffs.items()})

    def to_jet(self, valid=INF) -> Jet2:
        if any(i < 0 or j < 0 for i, j in self.coeffs):
            raise PoleAtOrigin("Laurent polynomial has negative exponents")
        return Jet2(EXACT, dict(self.coeffs), valid)

    def __repr__(self):
        terms = " + ".join(f"({v})*x^{i}*y^{j}" for (i, j), v in sorted(self.coeffs.items()))
        return f"LaurentPoly2[{terms or '0'}]"


def _pow_gr(v: GaussianRational, e: int) -> GaussianRational:
    if e == 0:
        return GaussianRational(1)
    if e > 0:
        out = GaussianRational(1)
        for _ in range(e):
            out = out * v
        return out
    return GaussianRational(1) / _pow_gr(v, -e)


@dataclass
class CoordinateChange:
    """(u, v) -> (x, y) map, either a series change or a Laurent-monomial chart.

    series kind: comp1/comp2 are Jet2 with zero constant term; invertible
    means the Jacobian at the origin is nonsingular.

    rational-chart kind: comp1/comp2 are LaurentPoly2 single monomials and
    inverse1/inverse2 the explicit inverse relations (also monomials).
    """

    kind: str
    comp1: object
    comp2: object
    inverse1: object = None
    inverse2: object = None

    @classmethod
    def from_series(cls, comp1: Jet2, comp2: Jet2) -> "CoordinateChange":
        for c in (comp1, comp2):
            c00 = c.coeffs.get((0, 0))
            if c00 is not None and not scalars.is_zero_scalar(c00, c.mode):
                raise NonInvertibleChange("series change must fix the origin")
        return cls("series", comp1, comp2)

    @classmethod
    def linear(cls, m11, m12, m21, m22, mode=EXACT, valid=INF) -> "CoordinateChange":
        x = Jet2.from_coeffs({(1, 0): m11, (0, 1): m12}, mode, valid)
        y = Jet2.from_coeffs({(1, 0): m21, (0, 1): m22}, mode, valid)
        return cls.from_series(x, y)

    @classmethod
    def monomial_chart(cls, forward: Sequence[Tuple[int, int, object]],
                       inverse: Sequence[Tuple[int, int, object]]) -> "CoordinateChange":
        """Chart maps like (x,y) = (1/u, v/u): exponent/constant triples."""
        f1 = LaurentPoly2.monomial(forward[0][0], forward[0][1], forward[0][2])
        f2 = LaurentPoly2.monomial(forward[1][0], forward[1][1], forward[1][2])
        g1 = LaurentPoly2.monomial(inverse[0][0], inverse[0][1], inverse[0][2])
        g2 = LaurentPoly2.monomial(inverse[1][0], inverse[1][1], inverse[1][2])
        return cls("rational-chart", f1, f2, g1, g2)

    # -- series-kind utilities ------------------------------------------
    def jacobian_at_origin(self):
        j11 = self.comp1.coeffs.get((1, 0), scalars.zero(self.comp1.mode))
        j12 = self.comp1.coeffs.get((0, 1), scalars.zero(self.comp1.mode))
        j21 = self.comp2.coeffs.get((1, 0), scalars.zero(self.comp2.mode))
        j22 = self.comp2.coeffs.get((0, 1), scalars.zero(self.comp2.mode))
        return j11, j12, j21, j22

    def invertible(self) -> bool:
        if self.kind != "series":
            return True
        j11, j12, j21, j22 = self.jacobian_at_origin()
        det = j11 * j22 - j12 * j21
        return not scalars.is_zero_scalar(det, self.comp1.mode, 0.0)

    def compose(self, other: "CoordinateChange") -> "CoordinateChange":
        """self o other: apply *other* first (both series kind)."""
        if self.kind != "series" or other.kind != "series":
            raise ValueError("compose is defined for series changes")
        c1 = jet_compose2(self.comp1, other.comp1, other.comp2)
        c2 = jet_compose2(self.comp2, other.comp1, other.comp2)
        return CoordinateChange.from_series(c1, c2)

    def inverse(self, degree: Optional[int] = None) -> "CoordinateChange":
        """Compositional inverse of a series change, degree by degree."""
        if self.kind != "series":
            return CoordinateChange("rational-chart", self.inverse1, self.inverse2,
                                    self.comp1, self.comp2)
        if not self.invertible():
            raise NonInvertibleChange("Jacobian at 0 is singular")
        mode = self.comp1.mode
        valid = min(self.comp1.valid_through, self.comp2.valid_through)
        if degree is None:
            degree = valid if valid != INF else max(
                self.comp1.degree_bound(), self.comp2.degree_bound(), 1) * 2
        degree = int(min(degree, 64)) if degree != INF else 16
        j11, j12, j21, j22 = self.jacobian_at_origin()
        det = j11 * j22 - j12 * j21
        inv = (
            (j22 / det, -j12 / det),
            (-j21 / det, j11 / det),
        )
        x = Jet2.variable("x", mode, degree)
        y = Jet2.variable("y", mode, degree)
        lin1 = x.scale(inv[0][0]) + y.scale(inv[0][1])
        lin2 = x.scale(inv[1][0]) + y.scale(inv[1][1])
        # nonlinear tail N with phi = L + N; iterate psi <- Linv(id - N(psi))
        n1 = (self.comp1 - x.scale(j11) - y.scale(j12)).truncate(degree)
        n2 = (self.comp2 - x.scale(j21) - y.scale(j22)).truncate(degree)
        p1, p2 = lin1, lin2
        for _ in range(degree):
            t1 = jet_compose2(n1, p1, p2)
            t2 = jet_compose2(n2, p1, p2)
            r1 = (x - t1).truncate(degree)
            r2 = (y - t2).truncate(degree)
            p1 = r1.scale(inv[0][0]) + r2.scale(inv[0][1])
            p2 = r1.scale(inv[1][0]) + r2.scale(inv[1][1])
        result = CoordinateChange.from_series(p1.truncate(valid), p2.truncate(valid))
        return result


def pullback(x: VectorFieldGerm, change: CoordinateChange,
             clear: Optional[Tuple[int, int]] = None):
    """Transform a germ through a coordinate change.

    series kind: solves Dc(result) = X o c, requiring an invertible Jacobian.

    rational-chart kind: differentiates the inverse chart relations along X
    (exact Laurent arithmetic).  The result must be holomorphic after
    multiplying by the declared pole-clearing monomial u^clear[0] v^clear[1];
    otherwise PoleAtOrigin is raised carrying the pole exponents.
    """
    if change.kind == "series":
        if not change.invertible():
            raise NonInvertibleChange("pullback through a singular series change")
        c1, c2 = change.comp1, change.comp2
        a_c = jet_compose2(x.a, c1, c2)
        b_c = jet_compose2(x.b, c1, c2)
        j11 = jet_derive(c1, "x")
        j12 = jet_derive(c1, "y")
        j21 = jet_derive(c2, "x")
        j22 = jet_derive(c2, "y")
        det = jet_mul(j11, j22) - jet_mul(j12, j21)
        det_inv = series.jet_reciprocal(det)
        r1 = jet_mul(det_inv, jet_mul(j22, a_c) - jet_mul(j12, b_c))
        r2 = jet_mul(det_inv, jet_mul(j11, b_c) - jet_mul(j21, a_c))
        return VectorFieldGerm(r1, r2)

    # rational chart: u_dot = dsigma1/dx * A + dsigma1/dy * B at (x,y) = c(u,v)
    if x.mode != EXACT:
        raise ValueError("rational-chart pullback requires exact mode")
    sigma1, sigma2 = change.inverse1, change.inverse2
    a = LaurentPoly2.from_jet(x.a).substitute_monomials(change.comp1, change.comp2)
    b = LaurentPoly2.from_jet(x.b).substitute_monomials(change.comp1, change.comp2)
    comps = []
    for sig in (sigma1, sigma2):
        dx = sig.derivative(0).substitute_monomials(change.comp1, change.comp2)
        dy = sig.derivative(1).substitute_monomials(change.comp1, change.comp2)
        comps.append(dx * a + dy * b)
    if clear is not None:
        comps = [c.shift(clear[0], clear[1]) for c in comps]
    mins = [c.min_exponents() for c in comps if not c.is_zero()]
    if mins and (min(m[0] for m in mins) < 0 or min(m[1] for m in mins) < 0):
        pole = (min(m[0] for m in mins), min(m[1] for m in mins))
        raise PoleAtOrigin(f"transformed germ has pole exponents {pole}; declare a clearing factor")
    valid = x.valid_through
    return VectorFieldGerm(comps[0].to_jet(valid), comps[1].to_jet(valid))


# ---------------------------------------------------------------------------
# divisor / primitive split and linear data
# ---------------------------------------------------------------------------

@dataclass
class DivisorFactor:
    label: str
    form: Jet2
    power: int


def primitive_split(x: VectorFieldGerm,
                    declared: Sequence[Tuple[str, Jet2]] = ()
                    ) -> Tuple[List[DivisorFactor], VectorFieldGerm]:
    """Extract the maximal common monomial (and declared-form) divisor.

    Factors searched: x^i, y^j, then each declared form in order (repeated
    exact division of both components).  The divisor may be trivial.
    """
    a, b = x.a, x.b
    factors: List[DivisorFactor] = []

    def support_min(jet: Jet2, idx: int):
        if jet.is_zero():
            return None
        return min(k[idx] for k in jet.coeffs)

    for idx, (label, form_key) in enumerate((("x", (1, 0)), ("y", (0, 1)))):
        mins = [m for m in (support_min(a, idx), support_min(b, idx)) if m is not None]
        power = min(mins) if mins else 0
        if power > 0:
            if idx == 0:
                a = a.divide_monomial(power, 0)
                b = b.divide_monomial(power, 0)
            else:
                a = a.divide_monomial(0, power)
                b = b.divide_monomial(0, power)
            factors.append(DivisorFactor(label, Jet2.variable(label, x.mode, INF), power))

    for label, form in declared:
        power = 0
        while True:
            if a.is_zero() and b.is_zero():
                break
            sa, qa = exact_divide(a, form) if not a.is_zero() else (series.DIVISIBLE, a)
            sb, qb = exact_divide(b, form) if not b.is_zero() else (series.DIVISIBLE, b)
            if sa == series.DIVISIBLE and sb == series.DIVISIBLE:
                a, b = qa, qb
                power += 1
            else:
                break
        if power > 0:
            factors.append(DivisorFactor(label, form, power))
    return factors, VectorFieldGerm(a, b)


@dataclass
class LinearPartData:
    matrix: Tuple[Tuple[Scalar, Scalar], Tuple[Scalar, Scalar]]
    trace: Scalar
    det: Scalar
    eigenvalues: Optional[Tuple[Scalar, Scalar]]

    def is_zero_matrix(self, mode, tol=0.0) -> bool:
        return all(
            scalars.is_zero_scalar(e, mode, tol)
            for row in self.matrix for e in row
        )

    def is_nilpotent(self, mode, tol=0.0) -> bool:
        return (
            scalars.is_zero_scalar(self.trace, mode, tol)
            and scalars.is_zero_scalar(self.det, mode, tol)
            and not self.is_zero_matrix(mode, tol)
        )

    def eigenvalues_zero(self, mode, tol=0.0) -> bool:
        return scalars.is_zero_scalar(self.trace, mode, tol) and scalars.is_zero_scalar(
            self.det, mode, tol
        )


def linear_part(x: VectorFieldGerm) -> LinearPartData:
    """Degree-1 coefficient matrix and its eigenvalue data.

    Exact mode reports rational eigenvalues when the characteristic
    discriminant is a perfect square in Q(i); otherwise eigenvalues is None
    and the char-poly data (trace, det) still identifies the class.
    """

    def c(jet, key):
        if jet.valid_through != INF and jet.valid_through < 1:
            raise PrecisionExhausted("linear_part needs degree-1 coefficients")
        return jet.coeffs.get(key, scalars.zero(jet.mode))

    m = (
        (c(x.a, (1, 0)), c(x.a, (0, 1))),
        (c(x.b, (1, 0)), c(x.b, (0, 1))),
    )
    tr = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    eig = None
    if x.mode == EXACT:
        disc = tr * tr - GaussianRational(4) * det
        root = disc.sqrt()
        if root is not None:
            half = GaussianRational(Fraction(1, 2))
            eig = ((tr + root) * half, (tr - root) * half)
    else:
        disc = tr * tr - 4 * det
        root = complex(disc) ** 0.5
        eig = ((tr + root) / 2, (tr - root) / 2)
    return LinearPartData(m, tr, det, eig)
