"""Truncated power series in one and two variables with precision tracking.

A jet stores the coefficients of total degree <= valid_through and nothing
beyond: every operation computes the tightest conservative valid_through
(product rule min(av + ord b, bv + ord a), derivative loses one degree,
composition takes the min over contributing chains) and never reports a
coefficient it cannot guarantee.  Polynomials known exactly carry
valid_through = INF.  Zero jets have order INF.

All values are immutable after construction; operations are pure functions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from . import scalars
from .errors import (
    CompositionAtNonzeroPoint,
    ModeMismatch,
    NotAUnit,
    PrecisionExhausted,
)
from .scalars import EXACT, FLOAT, GaussianRational, Scalar

INF = math.inf

DEFAULT_DEGREE = 16


def default_degree() -> int:
    """CLI-overridable truncation degree (GERMFORGE_DEGREE)."""
    import os

    raw = os.environ.get("GERMFORGE_DEGREE")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_DEGREE


def _as_scalar(value, mode):
    if mode == EXACT:
        return GaussianRational.from_value(value)
    if isinstance(value, GaussianRational):
        raise ModeMismatch("exact scalar used in float-mode jet")
    return complex(value)


class Jet1:
    """Truncated series in one variable z."""

    __slots__ = ("mode", "coeffs", "valid_through")

    def __init__(self, mode: str, coeffs: Dict[int, Scalar], valid_through):
        self.mode = mode
        cleaned = {}
        for k, v in coeffs.items():
            if k < 0:
                raise ValueError("Jet1 exponents must be >= 0")
            if k <= valid_through and not scalars.is_zero_scalar(v, mode):
                cleaned[k] = v
        self.coeffs = cleaned
        self.valid_through = valid_through

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_coeffs(cls, pairs, mode=EXACT, valid_through=INF) -> "Jet1":
        if isinstance(pairs, dict):
            pairs = pairs.items()
        return cls(mode, {k: _as_scalar(v, mode) for k, v in pairs}, valid_through)

    @classmethod
    def zero(cls, mode=EXACT, valid_through=INF) -> "Jet1":
        return cls(mode, {}, valid_through)

    @classmethod
    def const(cls, value, mode=EXACT, valid_through=INF) -> "Jet1":
        return cls(mode, {0: _as_scalar(value, mode)}, valid_through)

    @classmethod
    def variable(cls, mode=EXACT, valid_through=INF) -> "Jet1":
        return cls(mode, {1: scalars.one(mode)}, valid_through)

    # -- basic queries ----------------------------------------------------
    def order(self):
        return min(self.coeffs) if self.coeffs else INF

    def coeff(self, k: int) -> Scalar:
        if k > self.valid_through:
            raise PrecisionExhausted(f"degree {k} beyond valid_through {self.valid_through}")
        return self.coeffs.get(k, scalars.zero(self.mode))

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(scalars.is_zero_scalar(v, self.mode, tol) for v in self.coeffs.values())

    def is_polynomial(self) -> bool:
        return self.valid_through == INF

    def truncate(self, valid_through) -> "Jet1":
        return Jet1(self.mode, dict(self.coeffs), min(self.valid_through, valid_through))

    def degree_bound(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "Jet1"):
        scalars.check_same_mode(self.mode, other.mode)

    def __add__(self, other: "Jet1") -> "Jet1":
        self._check(other)
        valid = min(self.valid_through, other.valid_through)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, scalars.zero(self.mode)) + v
        return Jet1(self.mode, out, valid)

    def __neg__(self) -> "Jet1":
        return Jet1(self.mode, {k: -v for k, v in self.coeffs.items()}, self.valid_through)

    def __sub__(self, other: "Jet1") -> "Jet1":
        return self + (-other)

    def __mul__(self, other: "Jet1") -> "Jet1":
        self._check(other)
        valid = min(
            self.valid_through + other.order(),
            other.valid_through + self.order(),
        )
        out: Dict[int, Scalar] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j > valid:
                    continue
                k = i + j
                p = a * b
                out[k] = out.get(k, scalars.zero(self.mode)) + p
        return Jet1(self.mode, out, valid)

    def scale(self, value) -> "Jet1":
        s = _as_scalar(value, self.mode)
        return Jet1(self.mode, {k: v * s for k, v in self.coeffs.items()}, self.valid_through)

    def derivative(self) -> "Jet1":
        if self.valid_through != INF and self.valid_through < 1:
            raise PrecisionExhausted("derivative of a degree-0 jet")
        valid = self.valid_through if self.valid_through == INF else self.valid_through - 1
        out = {}
        for k, v in self.coeffs.items():
            if k >= 1:
                out[k - 1] = v * _as_scalar(k, self.mode)
        return Jet1(self.mode, out, valid)

    def reciprocal(self) -> "Jet1":
        c0 = self.coeffs.get(0)
        if c0 is None or scalars.is_zero_scalar(c0, self.mode):
            raise NotAUnit("Jet1 reciprocal of a non-unit")
        valid = self.valid_through
        if valid == INF and len(self.coeffs) > 1:
            # the inverse of a nonconstant polynomial is an infinite series
            valid = default_degree()
        bound = _finite_bound(valid)
        inv0 = scalars.one(self.mode) / c0
        out = {0: inv0}
        for s in range(1, bound + 1):
            acc = scalars.zero(self.mode)
            for k, v in self.coeffs.items():
                if 1 <= k <= s:
                    acc = acc + v * out.get(s - k, scalars.zero(self.mode))
            if not scalars.is_zero_scalar(acc, self.mode):
                out[s] = -inv0 * acc
        return Jet1(self.mode, out, valid)

    def compose(self, g: "Jet1") -> "Jet1":
        """self(g(z)) for g(0) = 0, or polynomial self."""
        self._check(g)
        if not scalars.is_zero_scalar(g.coeffs.get(0, scalars.zero(g.mode)), g.mode):
            if not self.is_polynomial():
                raise CompositionAtNonzeroPoint("Jet1 composition at g(0) != 0")
        r = g.order()
        valid = g.valid_through
        if not self.is_polynomial():
            if r == INF:
                valid = INF
            else:
                valid = min(valid, (self.valid_through + 1) * r - 1)
        acc = Jet1.zero(self.mode, valid)
        power = Jet1.const(1, self.mode, INF)
        for k in range(0, _finite_bound(self.degree_bound()) + 1):
            c = self.coeffs.get(k)
            if c is not None:
                acc = acc + power.scale(c)
            if k < self.degree_bound():
                power = power * g
        return acc.truncate(valid)

    def eval_scalar(self, value: Scalar) -> Scalar:
        """Polynomial evaluation (Horner over the stored exponents)."""
        result = scalars.zero(self.mode)
        prev = None
        for k in sorted(self.coeffs, reverse=True):
            if prev is None:
                result = self.coeffs[k]
            else:
                for _ in range(prev - k):
                    result = result * value
                result = result + self.coeffs[k]
            prev = k
        if prev is not None:
            for _ in range(prev):
                result = result * value
        return result

    def to_float(self) -> "Jet1":
        if self.mode == FLOAT:
            return self
        return Jet1(FLOAT, {k: v.to_complex() for k, v in self.coeffs.items()}, self.valid_through)

    def equals(self, other: "Jet1", tol: float = 0.0) -> bool:
        self._check(other)
        valid = min(self.valid_through, other.valid_through)
        keys = set(self.coeffs) | set(other.coeffs)
        z = scalars.zero(self.mode)
        for k in keys:
            if k > valid:
                continue
            d = self.coeffs.get(k, z) - other.coeffs.get(k, z)
            if not scalars.is_zero_scalar(d, self.mode, tol):
                return False
        return True

    def __repr__(self):
        terms = " + ".join(f"({v})*z^{k}" for k, v in sorted(self.coeffs.items()))
        return f"Jet1[{terms or '0'}; valid<={self.valid_through}]"


def _finite_bound(valid) -> int:
    if valid == INF:
        return 10 ** 9
    return int(valid)


class Jet2:
    """Truncated series in two variables x, y (total-degree triangular)."""

    __slots__ = ("mode", "coeffs", "valid_through")

    def __init__(self, mode: str, coeffs: Dict[Tuple[int, int], Scalar], valid_through):
        self.mode = mode
        cleaned = {}
        for (i, j), v in coeffs.items():
            if i < 0 or j < 0:
                raise ValueError("Jet2 exponents must be >= 0")
            if i + j <= valid_through and not scalars.is_zero_scalar(v, mode):
                cleaned[(i, j)] = v
        self.coeffs = cleaned
        self.valid_through = valid_through

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_coeffs(cls, pairs, mode=EXACT, valid_through=INF) -> "Jet2":
        if isinstance(pairs, dict):
            pairs = pairs.items()
        return cls(mode, {k: _as_scalar(v, mode) for k, v in pairs}, valid_through)

    @classmethod
    def zero(cls, mode=EXACT, valid_through=INF) -> "Jet2":
        return cls(mode, {}, valid_through)

    @classmethod
    def const(cls, value, mode=EXACT, valid_through=INF) -> "Jet2":
        return cls(mode, {(0, 0): _as_scalar(value, mode)}, valid_through)

    @classmethod
    def variable(cls, name: str, mode=EXACT, valid_through=INF) -> "Jet2":
        if name == "x":
            key = (1, 0)
        elif name == "y":
            key = (0, 1)
        else:
            raise ValueError(f"unknown variable {name!r}")
        return cls(mode, {key: scalars.one(mode)}, valid_through)

    @classmethod
    def monomial(cls, i: int, j: int, value=1, mode=EXACT, valid_through=INF) -> "Jet2":
        return cls(mode, {(i, j): _as_scalar(value, mode)}, valid_through)

    # -- queries -----------------------------------------------------------
    def order(self):
        return min(i + j for i, j in self.coeffs) if self.coeffs else INF

    def coeff(self, i: int, j: int) -> Scalar:
        if i + j > self.valid_through:
            raise PrecisionExhausted(
                f"degree {i + j} beyond valid_through {self.valid_through}"
            )
        return self.coeffs.get((i, j), scalars.zero(self.mode))

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(scalars.is_zero_scalar(v, self.mode, tol) for v in self.coeffs.values())

    def is_polynomial(self) -> bool:
        return self.valid_through == INF

    def truncate(self, valid_through) -> "Jet2":
        return Jet2(self.mode, dict(self.coeffs), min(self.valid_through, valid_through))

    def degree_bound(self) -> int:
        return max(i + j for i, j in self.coeffs) if self.coeffs else 0

    def homogeneous_part(self, d: int) -> "Jet2":
        out = {k: v for k, v in self.coeffs.items() if k[0] + k[1] == d}
        return Jet2(self.mode, out, self.valid_through)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "Jet2"):
        scalars.check_same_mode(self.mode, other.mode)

    def __add__(self, other: "Jet2") -> "Jet2":
        self._check(other)
        valid = min(self.valid_through, other.valid_through)
        out = dict(self.coeffs)
        z = scalars.zero(self.mode)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, z) + v
        return Jet2(self.mode, out, valid)

    def __neg__(self) -> "Jet2":
        return Jet2(self.mode, {k: -v for k, v in self.coeffs.items()}, self.valid_through)

    def __sub__(self, other: "Jet2") -> "Jet2":
        return self + (-other)

    def __mul__(self, other: "Jet2") -> "Jet2":
        return jet_mul(self, other)

    def scale(self, value) -> "Jet2":
        s = _as_scalar(value, self.mode)
        return Jet2(self.mode, {k: v * s for k, v in self.coeffs.items()}, self.valid_through)

    def derivative(self, var: str) -> "Jet2":
        return jet_derive(self, var)

    def reciprocal(self) -> "Jet2":
        return jet_reciprocal(self)

    def substitute(self, p: "Jet2", q: "Jet2") -> "Jet2":
        return jet_compose2(self, p, q)

    def eval_complex(self, x: complex, y: complex) -> complex:
        """Float evaluation of the stored truncation."""
        acc = 0j
        for (i, j), v in self.coeffs.items():
            acc += scalars.to_complex(v) * (x ** i) * (y ** j)
        return acc

    def to_float(self) -> "Jet2":
        if self.mode == FLOAT:
            return self
        return Jet2(FLOAT, {k: v.to_complex() for k, v in self.coeffs.items()}, self.valid_through)

    def equals(self, other: "Jet2", tol: float = 0.0) -> bool:
        self._check(other)
        valid = min(self.valid_through, other.valid_through)
        keys = set(self.coeffs) | set(other.coeffs)
        z = scalars.zero(self.mode)
        for k in keys:
            if k[0] + k[1] > valid:
                continue
            d = self.coeffs.get(k, z) - other.coeffs.get(k, z)
            if not scalars.is_zero_scalar(d, self.mode, tol):
                return False
        return True

    def restrict_y0(self) -> Jet1:
        """The 1-variable jet self(x, 0)."""
        out = {i: v for (i, j), v in self.coeffs.items() if j == 0}
        return Jet1(self.mode, out, self.valid_through)

    def restrict_x0(self) -> Jet1:
        """The 1-variable jet self(0, y)."""
        out = {j: v for (i, j), v in self.coeffs.items() if i == 0}
        return Jet1(self.mode, out, self.valid_through)

    def antiderivative_x(self) -> "Jet2":
        """Term-wise integral in x with zero constant of integration."""
        valid = self.valid_through if self.valid_through == INF else self.valid_through + 1
        out = {}
        for (i, j), v in self.coeffs.items():
            out[(i + 1, j)] = v / _as_scalar(i + 1, self.mode)
        return Jet2(self.mode, out, valid)

    def divide_monomial(self, i: int, j: int) -> "Jet2":
        """Exact division by x^i y^j; raises ValueError when not divisible."""
        out = {}
        for (a, b), v in self.coeffs.items():
            if a < i or b < j:
                raise ValueError(f"not divisible by x^{i} y^{j}: term x^{a} y^{b}")
            out[(a - i, b - j)] = v
        valid = self.valid_through if self.valid_through == INF else self.valid_through - (i + j)
        return Jet2(self.mode, out, valid)

    def __repr__(self):
        terms = " + ".join(
            f"({v})*x^{i}*y^{j}" for (i, j), v in sorted(self.coeffs.items())
        )
        return f"Jet2[{terms or '0'}; valid<={self.valid_through}]"


# ---------------------------------------------------------------------------
# spec operations
# ---------------------------------------------------------------------------

def jet_mul(a: Jet2, b: Jet2) -> Jet2:
    """Cauchy product with valid_through = min(av + ord b, bv + ord a)."""
    scalars.check_same_mode(a.mode, b.mode)
    valid = min(a.valid_through + b.order(), b.valid_through + a.order())
    out: Dict[Tuple[int, int], Scalar] = {}
    z = scalars.zero(a.mode)
    for (i1, j1), u in a.coeffs.items():
        for (i2, j2), v in b.coeffs.items():
            d = i1 + i2 + j1 + j2
            if d > valid:
                continue
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, z) + u * v
    return Jet2(a.mode, out, valid)


def jet_reciprocal(a: Jet2) -> Jet2:
    """Series inverse of a unit (a(0,0) != 0)."""
    c0 = a.coeffs.get((0, 0))
    if c0 is None or scalars.is_zero_scalar(c0, a.mode):
        raise NotAUnit("jet_reciprocal: constant term vanishes")
    valid = a.valid_through
    if valid == INF and len(a.coeffs) > 1:
        # the inverse of a nonconstant polynomial is an infinite series
        valid = default_degree()
    bound = _finite_bound(valid)
    inv0 = scalars.one(a.mode) / c0
    out: Dict[Tuple[int, int], Scalar] = {(0, 0): inv0}
    z = scalars.zero(a.mode)
    # degree-by-degree: b_s = -inv0 * sum_{0<d<=s} a_d b_{s-d}
    by_degree: Dict[int, list] = {}
    for (i, j), v in a.coeffs.items():
        if i + j > 0:
            by_degree.setdefault(i + j, []).append(((i, j), v))
    out_by_degree = {0: [((0, 0), inv0)]}
    for s in range(1, bound + 1):
        acc: Dict[Tuple[int, int], Scalar] = {}
        for d, terms in by_degree.items():
            if d > s:
                continue
            lower = out_by_degree.get(s - d)
            if not lower:
                continue
            for (i1, j1), u in terms:
                for (i2, j2), v in lower:
                    key = (i1 + i2, j1 + j2)
                    acc[key] = acc.get(key, z) + u * v
        level = []
        for key, v in acc.items():
            w = -inv0 * v
            if not scalars.is_zero_scalar(w, a.mode):
                out[key] = w
                level.append((key, w))
        out_by_degree[s] = level
        if not by_degree:
            break  # constant input: nothing beyond degree 0
    return Jet2(a.mode, out, valid)


def jet_compose1(f: Jet1, g: Jet2) -> Jet2:
    """f(g(x,y)) for g(0,0) = 0, or polynomial f at arbitrary g."""
    scalars.check_same_mode(f.mode, g.mode)
    g0 = g.coeffs.get((0, 0))
    if g0 is not None and not scalars.is_zero_scalar(g0, g.mode):
        if not f.is_polynomial():
            raise CompositionAtNonzeroPoint("jet_compose1: g(0,0) != 0 for a proper jet f")
    r = g.order()
    valid = g.valid_through
    if not f.is_polynomial():
        if r == INF:
            valid = INF
        else:
            valid = min(valid, (f.valid_through + 1) * r - 1)
    acc = Jet2.zero(f.mode, valid)
    power = Jet2.const(1, f.mode, INF)
    top = f.degree_bound()
    for k in range(0, top + 1):
        c = f.coeffs.get(k)
        if c is not None:
            acc = acc + power.scale(c)
        if k < top:
            power = jet_mul(power, g)
            if power.is_zero():
                break
    return acc.truncate(valid)


def jet_compose2(f: Jet2, p: Jet2, q: Jet2) -> Jet2:
    """f(p(x,y), q(x,y)) for p(0,0) = q(0,0) = 0 (or polynomial f)."""
    scalars.check_same_mode(f.mode, p.mode, q.mode)
    for g in (p, q):
        g0 = g.coeffs.get((0, 0))
        if g0 is not None and not scalars.is_zero_scalar(g0, g.mode):
            if not f.is_polynomial():
                raise CompositionAtNonzeroPoint("jet_compose2 at nonzero point")
    r = min(p.order(), q.order())
    valid = min(p.valid_through, q.valid_through)
    if not f.is_polynomial():
        if r == INF:
            valid = INF
        else:
            valid = min(valid, (f.valid_through + 1) * r - 1)
    bound = f.degree_bound()
    # group f by x-degree, Horner in p with inner Horner in q
    max_i = max((i for (i, j) in f.coeffs), default=0)
    max_j = max((j for (i, j) in f.coeffs), default=0)
    q_pows = [Jet2.const(1, f.mode, INF)]
    for _ in range(max_j):
        q_pows.append(jet_mul(q_pows[-1], q))
    acc = Jet2.zero(f.mode, valid)
    p_pow = Jet2.const(1, f.mode, INF)
    for i in range(0, max_i + 1):
        row = Jet2.zero(f.mode, INF)
        any_term = False
        for j in range(0, max_j + 1):
            c = f.coeffs.get((i, j))
            if c is not None:
                row = row + q_pows[j].scale(c)
                any_term = True
        if any_term:
            acc = acc + jet_mul(p_pow, row)
        if i < max_i:
            p_pow = jet_mul(p_pow, p)
    return acc.truncate(valid)


def jet_derive(a: Jet2, var: str) -> Jet2:
    """Formal partial derivative; valid_through decreases by one."""
    if a.valid_through != INF and a.valid_through < 1:
        raise PrecisionExhausted("jet_derive: valid_through would drop below 0")
    valid = a.valid_through if a.valid_through == INF else a.valid_through - 1
    out = {}
    if var == "x":
        for (i, j), v in a.coeffs.items():
            if i >= 1:
                out[(i - 1, j)] = v * _as_scalar(i, a.mode)
    elif var == "y":
        for (i, j), v in a.coeffs.items():
            if j >= 1:
                out[(i, j - 1)] = v * _as_scalar(j, a.mode)
    else:
        raise ValueError(f"unknown variable {var!r}")
    return Jet2(a.mode, out, valid)


def laurent_residue(h: Jet1) -> Scalar:
    """Residue at 0 of the 1-form dz/h(z).

    With r = ord(h), 1/h = z^(-r) / (h/z^r) and the residue is the degree
    r-1 coefficient of the reciprocal of the unit part.
    """
    r = h.order()
    if r == INF:
        raise PrecisionExhausted("laurent_residue of the zero jet")
    r = int(r)
    if r == 0:
        return scalars.zero(h.mode)
    if h.valid_through != INF and h.valid_through < 2 * r - 1:
        raise PrecisionExhausted(
            f"need unit part of h to degree {r - 1}; valid_through {h.valid_through}"
        )
    unit_valid = h.valid_through if h.valid_through == INF else h.valid_through - r
    unit = Jet1(h.mode, {k - r: v for k, v in h.coeffs.items()}, unit_valid)
    inv = unit.truncate(max(r - 1, 0)).reciprocal()
    if r - 1 > inv.valid_through:
        raise PrecisionExhausted("reciprocal not determined to degree order-1")
    return inv.coeff(r - 1)


def series_ode_solve(theta: Jet2, degree: int) -> Jet2:
    """Unique series solution of du/dx = theta(x, u), u(0, y) = y.

    Picard iteration; each pass pins one more power of x, so *degree*
    passes give the solution with residual zero through degree - 1.
    """
    if theta.valid_through < degree:
        raise PrecisionExhausted(
            f"theta known to degree {theta.valid_through} < requested {degree}"
        )
    mode = theta.mode
    x = Jet2.variable("x", mode, INF)
    y = Jet2.variable("y", mode, INF)
    u = y.truncate(degree)
    theta_t = theta.truncate(degree)
    for _ in range(degree):
        rhs = jet_compose2(theta_t, x.truncate(degree), u)
        u = (y + rhs.antiderivative_x()).truncate(degree)
    return u


def ode_residual(theta: Jet2, u: Jet2, degree: int) -> Jet2:
    """du/dx - theta(x, u), truncated to degree - 1."""
    x = Jet2.variable("x", theta.mode, INF)
    lhs = jet_derive(u, "x")
    rhs = jet_compose2(theta.truncate(degree), x.truncate(degree), u.truncate(degree))
    return (lhs - rhs).truncate(degree - 1)


# ---------------------------------------------------------------------------
# graded-lex exact division (quotients in the series ring)
# ---------------------------------------------------------------------------

DIVISIBLE = "divisible"
NOT_DIVISIBLE = "not-divisible"
UNKNOWN = "unknown"


def _glex_key(key: Tuple[int, int]):
    i, j = key
    return (i + j, j)


def exact_divide(num: Jet2, den: Jet2) -> Tuple[str, Optional[Jet2]]:
    """Greedy division num / den under the graded-lex order.

    Returns (status, quotient): DIVISIBLE with the quotient to the precision
    both operands support, NOT_DIVISIBLE when a determined coefficient
    obstructs, UNKNOWN when precision is exhausted before anything resolves.
    Truncated inputs are divided in the series ring to available precision;
    two exact polynomials are divided in the polynomial ring (an infinite
    series quotient reports NOT_DIVISIBLE).  Soundness rests on graded-lex
    being a monomial order: the minimal monomial of Q*D is the product of
    the minimal monomials.
    """
    scalars.check_same_mode(num.mode, den.mode)
    if den.is_zero():
        raise ZeroDivisionError("exact_divide by zero jet")
    if num.is_zero():
        return DIVISIBLE, Jet2.zero(num.mode, num.valid_through)
    pivot = min(den.coeffs, key=_glex_key)
    pdeg = pivot[0] + pivot[1]
    pval = den.coeffs[pivot]
    q_valid = min(num.valid_through, den.valid_through)
    if q_valid != INF:
        q_valid -= pdeg
        if q_valid < 0:
            return UNKNOWN, None
    polynomial_inputs = q_valid == INF
    if polynomial_inputs:
        # a genuine polynomial quotient has degree deg(num) - pdeg, so any
        # remainder beyond deg(num) signals an infinite-series tail
        limit = num.degree_bound()
    else:
        limit = q_valid + pdeg  # determined region of the remainder
    rem = dict(num.coeffs)
    quot: Dict[Tuple[int, int], Scalar] = {}
    z = scalars.zero(num.mode)
    while rem:
        key = min(rem, key=_glex_key)
        if key[0] + key[1] > limit:
            if polynomial_inputs:
                return NOT_DIVISIBLE, None
            break  # tail beyond determination: divisible to available precision
        i, j = key
        if i < pivot[0] or j < pivot[1]:
            return NOT_DIVISIBLE, None
        qkey = (i - pivot[0], j - pivot[1])
        c = rem[key] / pval
        quot[qkey] = c
        for (di, dj), dv in den.coeffs.items():
            rkey = (qkey[0] + di, qkey[1] + dj)
            if not polynomial_inputs and rkey[0] + rkey[1] > limit:
                continue
            nv = rem.get(rkey, z) - c * dv
            if scalars.is_zero_scalar(nv, num.mode):
                rem.pop(rkey, None)
            else:
                rem[rkey] = nv
    return DIVISIBLE, Jet2(num.mode, quot, q_valid)


def divides(den: Jet2, num: Jet2) -> bool:
    status, _ = exact_divide(num, den)
    return status == DIVISIBLE
