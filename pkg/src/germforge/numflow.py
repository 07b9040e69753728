"""Complex-time integration, leaf tracking, holonomy, and period integrals.

The integrator is an adaptive embedded Dormand-Prince 5(4) pair over
complexified time along piecewise-linear paths.  Leaf loops are base-variable
circles with a lift seed; tracking integrates the slope ODE around the loop
and the time-form integral dT = d(base)/(base component) rides along as an
extra quadrature state.  Each integration owns its own scratch state, so
independent runs can proceed concurrently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import LeafEscape, StepFailure
from .germ import VectorFieldGerm
from .scalars import FLOAT
from .series import Jet1, Jet2

DEFAULT_TOL = 1e-10


@dataclass
class TimePath:
    """Piecewise-linear path in complex time."""

    waypoints: Sequence[complex]
    max_step: float = 0.1
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if len(self.waypoints) < 2:
            raise ValueError("a time path needs at least two waypoints")
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if a == b:
                raise ValueError("consecutive waypoints must be distinct")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")

    @classmethod
    def segment(cls, t0: complex, t1: complex, **kw) -> "TimePath":
        return cls([complex(t0), complex(t1)], **kw)


@dataclass
class LeafLoopSpec:
    """Base-variable circle with a lift seed.

    The loop is base(theta) = center + radius * exp(i(phase + winding*theta)),
    theta in [0, 2*pi]; the seed is the starting value of the other variable.
    """

    base_var: str = "x"
    center: complex = 0j
    radius: float = 0.5
    winding: int = 1
    phase: float = 0.0
    seed: complex = 0j
    polydisc: float = 4.0
    tol: float = DEFAULT_TOL
    max_step: float = 0.05
    closure_rel: float = 1e-8

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("loop radius must be positive")
        if self.base_var not in ("x", "y"):
            raise ValueError("base_var must be 'x' or 'y'")
        if abs(self.seed) > self.polydisc:
            raise ValueError("lift seed outside the configured polydisc")

    def scaled(self, lam: complex) -> "LeafLoopSpec":
        """Image of the loop under (x, y) -> (lam x, lam y)."""
        lam = complex(lam)
        return replace(
            self,
            center=lam * self.center,
            radius=abs(lam) * self.radius,
            phase=self.phase + cmath.phase(lam),
            seed=lam * self.seed,
            polydisc=self.polydisc * max(1.0, abs(lam)),
        )


# ---------------------------------------------------------------------------
# adaptive Dormand-Prince 5(4)
# ---------------------------------------------------------------------------

_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40)


def _rk45(f: Callable[[float, Tuple[complex, ...]], Tuple[complex, ...]],
          y0: Tuple[complex, ...], s_end: float, tol: float,
          max_step: float, guard: Optional[Callable] = None
          ) -> Tuple[complex, ...]:
    """Integrate dy/ds = f(s, y) on [0, s_end] with PI step control."""
    s = 0.0
    y = tuple(y0)
    h = min(max_step, s_end)
    min_step = s_end * 1e-14
    nfail = 0
    while s < s_end - 1e-15:
        h = min(h, s_end - s)
        if h < min_step:
            raise StepFailure(f"step underflow at s={s}", partial=y)
        ks: List[Tuple[complex, ...]] = []
        try:
            for stage in range(7):
                arg = y
                if stage > 0:
                    coefs = _DP_A[stage]
                    arg = tuple(
                        y[i] + h * sum(c * ks[j][i] for j, c in enumerate(coefs))
                        for i in range(len(y))
                    )
                ks.append(f(s + h * sum(_DP_A[stage]) if stage else s, arg))
        except (OverflowError, ZeroDivisionError) as exc:
            raise StepFailure(f"vector field blew up at s={s}: {exc}", partial=y)
        y5 = tuple(
            y[i] + h * sum(b * ks[j][i] for j, b in enumerate(_DP_B5))
            for i in range(len(y))
        )
        y4 = tuple(
            y[i] + h * sum(b * ks[j][i] for j, b in enumerate(_DP_B4))
            for i in range(len(y))
        )
        err = max(abs(a - b) for a, b in zip(y5, y4))
        scale = tol * max(1.0, max(abs(v) for v in y5))
        if err <= scale:
            s += h
            y = y5
            if guard is not None:
                guard(s, y)
            nfail = 0
            factor = 2.0 if err == 0 else min(2.0, 0.9 * (scale / err) ** 0.2)
            h = min(max_step, h * factor)
        else:
            nfail += 1
            if nfail > 60:
                raise StepFailure("repeated step rejection", partial=y)
            h *= max(0.1, 0.9 * (scale / err) ** 0.25)
    return y


def _lower_field(x: VectorFieldGerm) -> Tuple[list, list]:
    xf = x.to_float()
    return list(xf.a.coeffs.items()), list(xf.b.coeffs.items())


def _eval_poly(terms: list, xv: complex, yv: complex) -> complex:
    acc = 0j
    for (i, j), c in terms:
        acc += c * xv ** i * yv ** j
    return acc


def integrate_flow(x: VectorFieldGerm, z0: Tuple[complex, complex],
                   path: TimePath) -> Tuple[complex, complex]:
    """Endpoint of the solution through z0 along the complex time path."""
    a_terms, b_terms = _lower_field(x)
    z = (complex(z0[0]), complex(z0[1]))
    for t0, t1 in zip(path.waypoints, path.waypoints[1:]):
        dt = t1 - t0

        def rhs(_s, y):
            return (
                dt * _eval_poly(a_terms, y[0], y[1]),
                dt * _eval_poly(b_terms, y[0], y[1]),
            )

        z = _rk45(rhs, z, 1.0, path.tol, path.max_step / max(abs(dt), 1e-12))
    return z


def integrate_flow_1d(h: Jet1, z0: complex, path: TimePath) -> complex:
    """Endpoint of dz/dT = h(z) along the path (1-D complex field)."""
    hf = h.to_float()
    terms = list(hf.coeffs.items())

    def eval1(z: complex) -> complex:
        return sum(c * z ** k for k, c in terms)

    z = complex(z0)
    for t0, t1 in zip(path.waypoints, path.waypoints[1:]):
        dt = t1 - t0

        def rhs(_s, y):
            return (dt * eval1(y[0]),)

        (z,) = _rk45(rhs, (z,), 1.0, path.tol, path.max_step / max(abs(dt), 1e-12))
    return z


# ---------------------------------------------------------------------------
# leaf tracking and periods
# ---------------------------------------------------------------------------

@dataclass
class LeafTrackResult:
    endpoint: complex
    period: complex
    closure_defect: float
    closed: bool


def _track(x: VectorFieldGerm, spec: LeafLoopSpec) -> LeafTrackResult:
    a_terms, b_terms = _lower_field(x)
    if spec.base_var == "x":
        base_terms, lift_terms = a_terms, b_terms

        def point(b, l):
            return (b, l)
    else:
        base_terms, lift_terms = b_terms, a_terms

        def point(b, l):
            return (l, b)

    w = spec.winding
    total_angle = 2 * math.pi * abs(w)
    direction = 1.0 if w >= 0 else -1.0
    r = spec.radius
    c = spec.center
    ph = spec.phase

    def base_at(theta: float) -> complex:
        return c + r * cmath.exp(1j * (ph + direction * theta))

    def dbase(theta: float) -> complex:
        return 1j * direction * r * cmath.exp(1j * (ph + direction * theta))

    def rhs(theta, state):
        lift, _period = state
        b = base_at(theta)
        xv, yv = point(b, lift)
        denom = _eval_poly(base_terms, xv, yv)
        if denom == 0 or abs(denom) < 1e-300:
            raise ZeroDivisionError("base component vanished on the lift")
        num = _eval_poly(lift_terms, xv, yv)
        db = dbase(theta)
        return (db * num / denom, db / denom)

    def guard(_theta, state):
        if abs(state[0]) > spec.polydisc:
            raise LeafEscape(
                f"lift left the polydisc (|lift| = {abs(state[0]):.3g})"
            )

    end_lift, period = _rk45(
        rhs, (complex(spec.seed), 0j), total_angle, spec.tol, spec.max_step,
        guard=guard,
    )
    defect = abs(end_lift - spec.seed) / max(abs(spec.seed), 1e-30)
    return LeafTrackResult(end_lift, period, defect, defect <= spec.closure_rel)


def track_leaf(x: VectorFieldGerm, spec: LeafLoopSpec) -> complex:
    """Holonomy image of the seed after lifting the base loop in the leaf."""
    guard_radius = abs(spec.center) + spec.radius
    if spec.base_var == "x" and abs(spec.center) < spec.radius * 1e-9 and guard_radius == 0:
        raise ValueError("degenerate loop")
    return _track(x, spec).endpoint


def leaf_period(x: VectorFieldGerm, spec: LeafLoopSpec,
                require_closed: bool = False) -> Tuple[complex, LeafTrackResult]:
    """Integral of the time form over the lifted loop, with closure diagnostics."""
    result = _track(x, spec)
    if require_closed and not result.closed:
        raise StepFailure(
            f"lift did not close (defect {result.closure_defect:.3g})",
            partial=result,
        )
    return result.period, result


@dataclass
class HomothetyReport:
    period_base: complex
    period_scaled: complex
    ratio: complex
    expected: complex
    defect: float


def homothety_period_ratio(x: VectorFieldGerm, spec: LeafLoopSpec,
                           lam: complex) -> HomothetyReport:
    """Compare periods of a homogeneous quadratic field across a homothety.

    Lambda* X = lam X for such fields, so the scaled loop's period is
    1/lam times the base period; the defect reported is |ratio*lam - 1|.
    """
    if not _is_homogeneous(x, 2):
        raise ValueError("homothety law needs a homogeneous quadratic field")
    lam = complex(lam)
    p0, _ = leaf_period(x, spec)
    p1, _ = leaf_period(x, spec.scaled(lam))
    ratio = p1 / p0
    return HomothetyReport(p0, p1, ratio, 1.0 / lam, abs(ratio * lam - 1.0))


def _is_homogeneous(x: VectorFieldGerm, degree: int) -> bool:
    for jet in (x.a, x.b):
        for (i, j) in jet.coeffs:
            if i + j != degree:
                return False
    return True


def richardson_check(run: Callable[[float, float], complex], tol: float,
                     max_step: float) -> Tuple[complex, complex, float]:
    """Run a quantity at (tol, h) and (tol/16, h/2); return both and the gap."""
    v1 = run(tol, max_step)
    v2 = run(tol / 16.0, max_step / 2.0)
    return v1, v2, abs(v1 - v2)


def replace_controls(spec: LeafLoopSpec, tol: Optional[float] = None,
                     max_step: Optional[float] = None) -> LeafLoopSpec:
    """Copy of a loop spec with tightened integrator controls."""
    kw = {}
    if tol is not None:
        kw["tol"] = tol
    if max_step is not None:
        kw["max_step"] = max_step
    return replace(spec, **kw)


# ---------------------------------------------------------------------------
# loop builders and 1-D probes
# ---------------------------------------------------------------------------

def elliptic_loop(c: complex, seed_branch: int = 0, tol: float = DEFAULT_TOL
                  ) -> LeafLoopSpec:
    """A homology-nontrivial loop on the leaf xy(x-y) = c.

    The x-projection of the leaf is a double cover branched at x = 0 and the
    three roots of x^3 = 4c; a circle around exactly {0, r1} lifts to a
    closed loop realizing a torus cycle, which carries a nonzero period.
    """
    if c == 0:
        raise ValueError("c = 0 is the singular fiber")
    r1 = (4 * complex(c)) ** (1.0 / 3.0)
    center = r1 / 2.0
    radius = 0.65 * abs(r1)
    start = center + radius * cmath.exp(1j * cmath.phase(r1))
    seed = _elliptic_lift(start, c, seed_branch)
    return LeafLoopSpec(
        base_var="x", center=center, radius=radius, winding=1,
        phase=cmath.phase(r1), seed=seed, tol=tol, max_step=0.02,
        polydisc=8.0,
    )


def _elliptic_lift(x0: complex, c: complex, branch: int) -> complex:
    # xy(x - y) = c  <=>  x y^2 - x^2 y + c = 0
    disc = x0 ** 4 - 4 * c * x0
    root = cmath.sqrt(disc)
    y_a = (x0 ** 2 + root) / (2 * x0)
    y_b = (x0 ** 2 - root) / (2 * x0)
    roots = sorted((y_a, y_b), key=lambda z: (abs(z), cmath.phase(z)))
    return roots[branch]


def siegel_loop(x0: complex, c: complex, tol: float = DEFAULT_TOL,
                radius: Optional[float] = None) -> LeafLoopSpec:
    """Loop |x| = |x0| with seed on the leaf xy = c (monomial Siegel fields)."""
    return LeafLoopSpec(
        base_var="x", center=0j, radius=abs(x0), winding=1,
        phase=cmath.phase(x0), seed=c / x0, tol=tol,
    )


def residue_probe_1d(h: Jet1, radius: float, tol: float = 1e-12,
                     max_doublings: int = 16) -> complex:
    """Contour integral of dz/h over |z| = radius by periodic trapezoid.

    For an order-2 germ this equals 2*pi*i times the residue obstructing
    semicompleteness: an independent numerical oracle for onedim_check.
    """
    hf = h.to_float()
    terms = list(hf.coeffs.items())

    def integrand(s: float) -> complex:
        z = radius * cmath.exp(2j * math.pi * s)
        val = sum(cc * z ** k for k, cc in terms)
        if val == 0:
            raise StepFailure("field vanishes on the probe circle")
        return 2j * math.pi * z / val

    n = 32
    prev = sum(integrand(i / n) for i in range(n)) / n
    for _ in range(max_doublings):
        n *= 2
        cur = sum(integrand(i / n) for i in range(n)) / n
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise StepFailure("contour quadrature did not converge")


def holonomy_taylor_coefficient(tracker: Callable[[complex], complex],
                                order: int, radius: float = 0.03,
                                samples: int = 16) -> complex:
    """Taylor coefficient of a tracked holonomy map via a discrete Cauchy integral.

    Evaluates h(z) - z at *samples* points on |z| = radius and extracts the
    z^order coefficient; spectrally accurate for analytic maps.
    """
    acc = 0j
    for k in range(samples):
        z = radius * cmath.exp(2j * math.pi * k / samples)
        acc += (tracker(z) - z) / z ** order
    return acc / samples
