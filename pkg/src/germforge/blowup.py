"""Single quadratic blow-up of germs at the origin, both charts.

Chart 0 has coordinates (x, t) with y = tx; chart 1 has (s, y) with x = sy.
The raw pullback of A dx + B dy in chart 0 is

    A(x, tx) dx + (1/x)[B(x, tx) - t A(x, tx)] dt

and the returned transform factors x^divisor_order out of it, where
divisor_order = min(order(X) - 1, maximal common exceptional power).  That
clearing always leaves a holomorphic germ, reproduces the classical d-1
bookkeeping on monomial inputs, and keeps the radial field as x dx.
Dicriticality is decided on the maximally cleared foliation: the divisor is
invariant iff the base component still vanishes on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from . import scalars
from .errors import DicriticalInput, PrecisionExhausted, UnresolvedRoots
from .germ import LinearPartData, VectorFieldGerm, linear_part
from .scalars import EXACT, GaussianRational, Scalar
from .series import INF, Jet1, Jet2


@dataclass
class BlowupResult:
    chart: int
    transformed: VectorFieldGerm
    divisor_order: int
    dicritical: bool


def _substitute_line(jet: Jet2, chart: int) -> Jet2:
    """y = tx (chart 0) or x = sy (chart 1): monomial exponent remap."""
    out = {}
    if chart == 0:
        for (i, j), v in jet.coeffs.items():
            key = (i + j, j)  # x^i (tx)^j = x^(i+j) t^j
            out[key] = out.get(key, scalars.zero(jet.mode)) + v
    else:
        for (i, j), v in jet.coeffs.items():
            key = (i, i + j)  # (sy)^i y^j, stored as s^i y^(i+j) -> (s-exp, y-exp)
            out[key] = out.get(key, scalars.zero(jet.mode)) + v
    return Jet2(jet.mode, out, jet.valid_through)


def _common_x_power(*jets: Jet2) -> Optional[int]:
    mins = []
    for jet in jets:
        if not jet.is_zero():
            mins.append(min(i for (i, j) in jet.coeffs))
    return min(mins) if mins else None


def blowup_vf(x: VectorFieldGerm, chart: int) -> BlowupResult:
    """Blow up a germ vanishing at the origin in the requested chart."""
    if chart not in (0, 1):
        raise ValueError("chart must be 0 or 1")
    if x.order() == INF:
        raise ValueError("blow-up of the zero germ")
    if x.order() < 1:
        raise ValueError("blowup_vf requires X(0,0) = 0")
    d = int(x.order())
    if chart == 0:
        base = _substitute_line(x.a, 0)                       # A(x, tx)
        fiber_num = _substitute_line(x.b, 0)                  # B(x, tx)
        t = Jet2.variable("y", x.mode, INF)                   # second slot is t
        mixed = fiber_num - (t * base)
    else:
        base = _substitute_line(x.b, 1)                       # B(sy, y), advances y
        fiber_num = _substitute_line(x.a, 1)                  # A(sy, y)
        s = Jet2.variable("x", x.mode, INF)                   # first slot is s
        mixed = fiber_num - (s * base)
    exc_idx = 0 if chart == 0 else 1

    def divide_exc(jet: Jet2, power: int) -> Jet2:
        if power == 0:
            return jet
        return jet.divide_monomial(power, 0) if exc_idx == 0 else jet.divide_monomial(0, power)

    # mixed is divisible by the exceptional coordinate since X(0,0) = 0
    fiber = divide_exc(mixed, 1)
    common = _common_x_power(base, fiber) if exc_idx == 0 else _common_y_power(base, fiber)
    if common is None:
        common = d - 1
    divisor_order = min(d - 1, common)
    base_c = divide_exc(base, divisor_order)
    fiber_c = divide_exc(fiber, divisor_order)
    if chart == 0:
        transformed = VectorFieldGerm(base_c, fiber_c)
    else:
        transformed = VectorFieldGerm(fiber_c, base_c)

    # dicritical test on the maximally cleared foliation
    full = common if common is not None else d - 1
    base_f = divide_exc(base, full)
    restricted = _restrict_to_divisor(base_f, exc_idx)
    dicritical = not restricted.is_zero()
    return BlowupResult(chart, transformed, divisor_order, dicritical)


def _common_y_power(*jets: Jet2) -> Optional[int]:
    mins = []
    for jet in jets:
        if not jet.is_zero():
            mins.append(min(j for (i, j) in jet.coeffs))
    return min(mins) if mins else None


def _restrict_to_divisor(jet: Jet2, exc_idx: int) -> Jet1:
    """Coefficients along the exceptional line (exc coordinate = 0)."""
    out = {}
    for (i, j), v in jet.coeffs.items():
        if exc_idx == 0 and i == 0:
            out[j] = v
        elif exc_idx == 1 and j == 0:
            out[i] = v
    return Jet1(jet.mode, out, jet.valid_through)


@dataclass
class DivisorSingularity:
    point: Scalar           # fiber coordinate on the divisor within the chart
    linear: LinearPartData


def divisor_singularities(result: BlowupResult) -> List[DivisorSingularity]:
    """Zeros of the transformed foliation on the divisor within this chart.

    The fiber component restricted to the divisor is a polynomial in the
    fiber coordinate; its roots (plus eigenvalue data of the recentered
    field) are returned.  Requires a non-dicritical input.
    """
    if result.dicritical:
        raise DicriticalInput("divisor singularities of a dicritical blow-up")
    x = result.transformed
    exc_idx = 0 if result.chart == 0 else 1
    fiber_jet = x.b if result.chart == 0 else x.a
    poly = _restrict_to_divisor(fiber_jet, exc_idx)
    roots = _poly_roots(poly)
    out = []
    for r in roots:
        shifted = _recenter_fiber(x, result.chart, r)
        out.append(DivisorSingularity(r, linear_part(shifted)))
    return out


def _recenter_fiber(x: VectorFieldGerm, chart: int, value: Scalar) -> VectorFieldGerm:
    """Translate the fiber coordinate so the singular point sits at the origin."""
    if x.valid_through != INF:
        raise PrecisionExhausted("recentering a truncated transform is not supported")
    mode = x.mode
    if chart == 0:
        p = Jet2.variable("x", mode, INF)
        q = Jet2.variable("y", mode, INF) + Jet2.const(value, mode, INF)
    else:
        p = Jet2.variable("x", mode, INF) + Jet2.const(value, mode, INF)
        q = Jet2.variable("y", mode, INF)
    from .series import jet_compose2

    return VectorFieldGerm(jet_compose2(x.a, p, q), jet_compose2(x.b, p, q))


def _poly_roots(poly: Jet1) -> List[Scalar]:
    """Roots of an exact univariate polynomial (0, deg<=2 formula, small candidates)."""
    if poly.is_zero():
        return []
    if poly.mode != EXACT:
        coeffs = [0j] * (poly.degree_bound() + 1)
        for k, v in poly.coeffs.items():
            coeffs[k] = complex(v)
        rts = np.roots(list(reversed(coeffs)))
        return [complex(r) for r in rts]
    roots: List[Scalar] = []
    work = dict(poly.coeffs)
    low = min(work)
    if low > 0:
        roots.append(GaussianRational(0))
        work = {k - low: v for k, v in work.items()}
    deg = max(work)
    coeffs = [work.get(k, GaussianRational(0)) for k in range(deg + 1)]
    roots.extend(_roots_exact(coeffs))
    return roots


def _roots_exact(coeffs: List[GaussianRational]) -> List[GaussianRational]:
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-coeffs[0] / coeffs[1]]
    if deg == 2:
        a, b, c = coeffs[2], coeffs[1], coeffs[0]
        disc = b * b - GaussianRational(4) * a * c
        root = disc.sqrt()
        if root is None:
            raise UnresolvedRoots("irrational discriminant in exact divisor polynomial")
        two_a = GaussianRational(2) * a
        return [(-b + root) / two_a, (-b - root) / two_a]
    # small-candidate deflation for higher degree
    candidates = [GaussianRational(k) for k in (-3, -2, -1, 1, 2, 3)]
    candidates += [GaussianRational(0, k) for k in (-1, 1)]
    candidates += [GaussianRational(Fraction(1, 2)), GaussianRational(Fraction(-1, 2))]
    found: List[GaussianRational] = []
    work = list(coeffs)
    progress = True
    while len(work) - 1 > 2 and progress:
        progress = False
        for cand in candidates:
            if _eval_poly(work, cand).is_zero():
                work = _deflate(work, cand)
                found.append(cand)
                progress = True
                break
    if len(work) - 1 > 2:
        raise UnresolvedRoots("divisor polynomial of degree > 2 with no small roots")
    found.extend(_roots_exact(work))
    return found


def _eval_poly(coeffs: List[GaussianRational], z: GaussianRational) -> GaussianRational:
    acc = GaussianRational(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _deflate(coeffs: List[GaussianRational], root: GaussianRational) -> List[GaussianRational]:
    """Synthetic division by (z - root)."""
    n = len(coeffs) - 1
    out = [GaussianRational(0)] * n
    acc = coeffs[n]
    out[n - 1] = acc
    for k in range(n - 1, 0, -1):
        acc = coeffs[k] + acc * root
        out[k - 1] = acc
    return out
