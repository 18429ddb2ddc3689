# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=too-many-arguments,too-many-positional-arguments,too-many-locals:

"""
Profile radius functions for each closed-form branch, plus an IVP integrator as an independent path.
"""

# Closed forms of f f' = a f + b s + c:
#
#   a = 0:           f(s) = sqrt(b s^2 + 2 c s + d)
#   b = 0, a != 0:   a f - c log(sigma (a f + c)) = a^2 s + d, with sigma the sign of a f + c
#   a, b != 0:       s(t) = d E(t) - c/b and f = a d t E(t), with E = exp(-int_{t0}^{t} tau/R(tau))
#                    and R(tau) = tau^2 - tau - b/a^2
#
# In the b = 0 case we solve in w = log(sigma (a f + c)).  The implicit equation becomes
# psi(w) = sigma e^w - c - c w - a^2 s - d = 0 with psi'(w) = a f, so psi is strictly monotone
# wherever f > 0 and a bracket can always be grown toward the right end of the domain.
#
# In the general case the auxiliary parameter t can pass through infinity: as t -> +inf the
# profile reaches s = -c/b with finite radius and slope a, and it continues from t = -inf.
# We handle this by working with v = 1/t (the slope is a + (b/a) v, affine in v) and by writing
# the closed form through the reduced antiderivative G(t) = F(t) - log|t| - L, which tends to
# zero at both ends of the t-line.  Then
#
#   f = a d t0 exp(-(G(t) - G(t0)))   and   s = d (t0/t) exp(-(G(t) - G(t0))) - c/b
#
# which agrees with the direct formula whenever t and t0 have the same sign.

import logging
import math
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np
from attrs import field, frozen
from scipy.integrate import DOP853
from scipy.optimize import brentq

from .curvature import curvature_sample
from .interface import (
    BadParameters,
    Branch,
    BranchViolation,
    DegenerateError,
    GeneralCaseState,
    NoBracket,
    NonPositiveRadicand,
    NonPositiveRadius,
    NotInOmega,
    NumericalError,
    ProfileCurve,
    ProfileSample,
    RicciParams,
    SingularInterval,
    SolverConfig,
    StopReason,
)

MACHINE_EPSILON = float(np.finfo(float).eps)
MAX_EXPONENT = 700.0  # exp() overflows a little above 709
MAX_BRACKET_STEPS = 200

# Bracket growth limit for the logarithmic distance to a pole
CHART_LIMIT = 1e4

# Largest relative arc-length gap accepted after inverting s(t)
INVERSION_TOLERANCE = 1e-9

# Five-point stencil spacing for slopes of the IVP interpolant, relative to the step size, with a floor
DENSE_DELTA = 1e-2
DENSE_FLOOR = 1e-6


def eval_f_case_a0(b: float, c: float, d: float, s: float) -> float:
    """Radius sqrt(b s^2 + 2 c s + d) of an a = 0 profile."""
    radicand = b * s * s + 2.0 * c * s + d
    if radicand <= 0:
        raise NonPositiveRadicand("b s^2 + 2 c s + d = %g <= 0 at s=%s" % (radicand, s))
    return math.sqrt(radicand)


def _candidates(start: float, end: float, closed: bool, limit: float = MAX_EXPONENT) -> Iterator[float]:
    """Points moving from start toward end, used to grow a bracket."""
    if closed:
        yield end
    elif math.isinf(end):
        for k in range(MAX_BRACKET_STEPS):
            candidate = start + math.copysign(2.0**k, end)
            if abs(candidate) > limit:
                yield math.copysign(limit, end)
                return
            yield candidate
    else:
        previous = start
        for k in range(1, MAX_BRACKET_STEPS):
            candidate = end + (start - end) / 2.0**k
            if candidate in (previous, end):
                return
            previous = candidate
            yield candidate


def _interior(lo: float, hi: float) -> float:
    if math.isinf(lo) and math.isinf(hi):
        return 0.0
    if math.isinf(lo):
        return hi - 1.0
    if math.isinf(hi):
        return lo + 1.0
    return 0.5 * (lo + hi)


def solve_monotone(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    increasing: bool,
    start: Optional[float] = None,
    lo_closed: bool = False,
    hi_closed: bool = False,
    rtol: float = 1e-13,
    limit: float = MAX_EXPONENT,
) -> float:
    """
    Find the root of a strictly monotone function on (lo, hi) by growing a bracket, then Brent's method.

    Args:
        fn(Callable[[float], float]): The monotone function
        lo(float): Lower end of the domain, possibly -inf
        hi(float): Upper end of the domain, possibly +inf
        increasing(bool): Whether fn increases
        start(Optional[float]): Where to start, defaults to an interior point
        lo_closed(bool): Whether fn may be evaluated at lo itself
        hi_closed(bool): Whether fn may be evaluated at hi itself
        rtol(float): Relative tolerance passed to brentq
        limit(float): Largest magnitude tried when growing toward an infinite end

    Returns:
        float: The root

    Raises:
        NoBracket: If the root is not inside the domain
    """
    start = _interior(lo, hi) if start is None else start
    value = fn(start)
    if value == 0:
        return start
    downward = (value > 0) == increasing
    end, closed = (lo, lo_closed) if downward else (hi, hi_closed)
    previous = start
    for candidate in _candidates(start, end, closed, limit):
        current = fn(candidate)
        if current == 0:
            return candidate
        if (current > 0) != (value > 0):
            left, right = min(previous, candidate), max(previous, candidate)
            return float(brentq(fn, left, right, xtol=1e-300, rtol=max(rtol, 4.0 * MACHINE_EPSILON)))
        previous = candidate
    raise NoBracket("No root between %g and %g" % (start, end))


def _log_domain(a: float, c: float, sigma: float) -> Tuple[float, float]:
    """Bounds on w = log(sigma (a f + c)) where f = (sigma e^w - c)/a is positive."""
    if a > 0:
        lo, hi = (max(0.0, c), math.inf) if sigma > 0 else (0.0, -c)
    else:
        lo, hi = (0.0, c) if sigma > 0 else (max(0.0, -c), math.inf)
    if not hi > lo:
        raise BranchViolation("No positive radius has sign(a f + c) = %+d for a=%g, c=%g" % (sigma, a, c))
    return (math.log(lo) if lo > 0 else -math.inf), (math.log(hi) if math.isfinite(hi) else math.inf)


def eval_f_case_b0(a: float, c: float, d: float, branch: Branch, s: float, tolerance: float = 1e-13) -> float:
    """Radius of a b = 0 profile, solving a f - c log(sigma (a f + c)) = a^2 s + d on the given branch."""
    if a == 0 or c == 0:
        raise BadParameters("The implicit b = 0 form requires a != 0 and c != 0")
    sigma = 1.0 if branch == Branch.PLUS else -1.0
    target = a * a * s + d

    def psi(w: float) -> float:
        return sigma * math.exp(w) - c - c * w - target

    w_lo, w_hi = _log_domain(a, c, sigma)
    try:
        w = solve_monotone(psi, w_lo, w_hi, increasing=a > 0, rtol=tolerance)
    except NoBracket as e:
        raise NoBracket("No %s branch radius at s=%s for (a,c,d)=(%g,%g,%g)" % (branch.value, s, a, c, d)) from e
    # sigma (a f + c) = e^w > 0 holds by construction, even where f itself rounds to -c/a
    f = (sigma * math.exp(w) - c) / a
    if not f > 0:
        raise NonPositiveRadius("Solved radius %g is not positive at s=%s" % (f, s))
    return f


def b_zero_inverse(a: float, c: float, d: float, branch: Branch, f: float) -> float:
    """Arc length s at which a b = 0 profile reaches radius f."""
    sigma = 1.0 if branch == Branch.PLUS else -1.0
    arg = sigma * (a * f + c)
    if arg <= 0:
        raise BranchViolation("Radius %g is not on the %s branch" % (f, branch.value))
    return (a * f - c * math.log(arg) - d) / (a * a)


def b_zero_endpoint_radius(a: float, c: float, branch: Branch) -> Optional[float]:
    """Radius where a b = 0 profile reaches slope +1 (plus branch) or -1 (minus branch), if it exists."""
    sigma = 1.0 if branch == Branch.PLUS else -1.0
    if a == sigma:
        return None
    radius = sigma * c / (1.0 - sigma * a)
    if radius <= 0 or sigma * (a * radius + c) <= 0:
        return None
    return radius


def r_roots(B: float) -> List[float]:
    """Real roots of R(t) = t^2 - t - B, ascending."""
    disc = 1.0 + 4.0 * B
    if disc < 0:
        return []
    if disc == 0:
        return [0.5]
    root = math.sqrt(disc)
    return [(1.0 - root) / 2.0, (1.0 + root) / 2.0]


@frozen(kw_only=True)
class PoleOffset:
    # noinspection PyUnresolvedReferences
    """
    Position of t relative to a root of R, given in logarithmic form.

    Attributes:
        root(float): The root, exactly as r_roots() returns it
        sign(float): Sign of t - root
        log_gap(float): log|t - root|
    """

    root: float
    sign: float
    log_gap: float


def _log_distance(tau: float, root: float, offset: Optional[PoleOffset]) -> float:
    if offset is not None and offset.root == root:
        return offset.log_gap
    return math.log(abs(tau - root))


def tau_over_r_antiderivative(B: float, tau: float, offset: Optional[PoleOffset] = None) -> float:
    """Antiderivative of tau/(tau^2 - tau - B) by partial fractions, taking log|tau - root| from offset when given."""
    disc = 1.0 + 4.0 * B
    if disc > 0:
        r1, r2 = r_roots(B)
        return r1 / (r1 - r2) * _log_distance(tau, r1, offset) + r2 / (r2 - r1) * _log_distance(tau, r2, offset)
    if disc == 0:
        gap = _log_distance(tau, 0.5, offset)
        inverse = 1.0 / (tau - 0.5) if offset is None else offset.sign * math.exp(min(-gap, MAX_EXPONENT))
        return gap - 0.5 * inverse
    q = math.sqrt(-disc) / 2.0
    return 0.5 * math.log(tau * tau - tau - B) + math.atan((tau - 0.5) / q) / (2.0 * q)


def _infinity_offset(B: float, sign: float) -> float:
    """Limit of F(t) - log|t| as t goes to sign * infinity."""
    disc = 1.0 + 4.0 * B
    if disc >= 0:
        return 0.0
    q = math.sqrt(-disc) / 2.0
    return math.copysign(math.pi / (4.0 * q), sign)


def _reduced_antiderivative(B: float, t: float, offset: Optional[PoleOffset] = None) -> float:
    if math.isinf(t):
        return 0.0
    return tau_over_r_antiderivative(B, t, offset) - math.log(abs(t)) - _infinity_offset(B, t)


def _on_path(t0: float, t: float, root: float) -> bool:
    """Whether root lies on the path from t0 to t, which passes through infinity when the signs differ."""
    if (t0 > 0) == (t > 0):
        return min(t0, t) <= root <= max(t0, t)
    if t0 > 0:
        return root >= t0 or root <= t
    return root <= t0 or root >= t


def eval_general_case(params: RicciParams, t0: float, t: float) -> GeneralCaseState:
    """
    Evaluate a profile with a != 0 and b != 0 at the auxiliary parameter t.

    Args:
        params(RicciParams): Parameters, using a, b, c and d
        t0(float): Base point, where s = d - c/b and f = a d t0
        t(float): Parameter to evaluate at, possibly infinite

    Returns:
        GeneralCaseState: The point (s, f) with f = a t (s + c/b)

    Raises:
        SingularInterval: If a root of R lies on the path from t0 to t
        NonPositiveRadius: If the radius is not positive
    """
    a, b, c, d = params.a, params.b, params.c, params.d
    if a == 0 or b == 0:
        raise BadParameters("The general case requires a != 0 and b != 0")
    if d == 0:
        raise BadParameters("The general case requires d != 0")
    if t0 == 0 or not math.isfinite(t0) or t == 0 or math.isnan(t):
        raise BadParameters("Auxiliary parameters must be nonzero, got t0=%s, t=%s" % (t0, t))
    B = b / (a * a)
    for root in r_roots(B):
        if _on_path(t0, t, root):
            raise SingularInterval("R(t) = t^2 - t - %g vanishes at t=%g, between t0=%g and t=%g" % (B, root, t0, t))
    return _general_state(params, t0, t)


def _general_state(params: RicciParams, t0: float, t: float, offset: Optional[PoleOffset] = None) -> GeneralCaseState:
    a, b, c, d = params.a, params.b, params.c, params.d
    B = b / (a * a)
    exponent = -(_reduced_antiderivative(B, t, offset) - _reduced_antiderivative(B, t0))
    scale = math.exp(max(-MAX_EXPONENT, min(exponent, MAX_EXPONENT)))
    f = a * d * t0 * scale
    if not f > 0:
        raise NonPositiveRadius("Radius a d t0 E = %g is not positive" % f)
    ratio = 0.0 if math.isinf(t) else t0 / t
    return GeneralCaseState(t=t, s=d * ratio * scale - c / b, f=f, a=a, B=B, t0=t0)


def general_case_v_bounds(a: float, b: float) -> Tuple[float, float]:
    """Bounds on v = 1/t from the slope condition |a + (b/a) v| <= 1."""
    ends = sorted([(-1.0 - a) * a / b, (1.0 - a) * a / b])
    return ends[0], ends[1]


def general_case_poles(a: float, b: float) -> List[float]:
    """Values of v = 1/t where R(t) vanishes, ascending."""
    return sorted(1.0 / root for root in r_roots(b / (a * a)))


@frozen(kw_only=True)
class GeneralComponent:
    """
    Connected piece of the admissible parameter set, in v = 1/t, that contains the base point.

    An end is either a slope bound (|f'| = 1 there, and the end is attained) or a pole where
    R vanishes (never attained).
    """

    t0: float
    v_lo: float
    v_hi: float
    lo_pole: bool
    hi_pole: bool

    @property
    def v0(self) -> float:
        return 1.0 / self.t0


def default_t0(params: RicciParams) -> float:
    """Pick a base point inside the first component where a d t0 > 0."""
    if params.d == 0:
        raise BadParameters("The general case requires d != 0")
    positive = params.a * params.d > 0
    v_lo, v_hi = general_case_v_bounds(params.a, params.b)
    cuts = [v_lo] + [p for p in general_case_poles(params.a, params.b) if v_lo < p < v_hi] + [v_hi]
    for lo, hi in zip(cuts, cuts[1:]):
        lo, hi = (max(lo, 0.0), hi) if positive else (lo, min(hi, 0.0))
        if hi > lo:
            return 1.0 / (0.5 * (lo + hi))
    raise NonPositiveRadius("No admissible t0 gives a d t0 > 0 for (a,b,d)=(%g,%g,%g)" % (params.a, params.b, params.d))


def general_case_component(params: RicciParams) -> GeneralComponent:
    """Locate the component containing the base point of a general-case parameter set."""
    t0 = params.t0 if params.t0 is not None else default_t0(params)
    if params.a * params.d * t0 <= 0:
        raise NonPositiveRadius("Base point t0=%g gives a d t0 <= 0" % t0)
    v_lo, v_hi = general_case_v_bounds(params.a, params.b)
    v0 = 1.0 / t0
    if not v_lo <= v0 <= v_hi:
        raise NotInOmega("Base point t0=%g violates |a + b/(a t0)| <= 1" % t0)
    lo, hi, lo_pole, hi_pole = v_lo, v_hi, False, False
    for pole in general_case_poles(params.a, params.b):
        if pole == v0:
            raise SingularInterval("Base point t0=%g is a root of R" % t0)
        if v_lo <= pole < v0:
            lo, lo_pole = pole, True
        elif v0 < pole <= hi:
            hi, hi_pole = pole, True
    return GeneralComponent(t0=t0, v_lo=lo, v_hi=hi, lo_pole=lo_pole, hi_pole=hi_pole)


def _t_of_v(v: float, t0: float) -> float:
    return math.copysign(math.inf, t0) if v == 0 else 1.0 / v


def general_case_at_v(params: RicciParams, component: GeneralComponent, v: float) -> GeneralCaseState:
    """Evaluate a general-case profile at v = 1/t inside its component."""
    return eval_general_case(params, component.t0, _t_of_v(v, component.t0))


def general_case_near_pole(params: RicciParams, component: GeneralComponent, upper: bool, u: float) -> GeneralCaseState:
    """
    Evaluate a general-case profile at v = pole -/+ e^u, next to the upper or lower pole end of its component.

    s and f behave like powers of |t - root| there, so log|t - root| is carried exactly rather
    than recovered from v, which has no digits left once e^u is below the float spacing at the pole.
    """
    pole = component.v_hi if upper else component.v_lo
    root = min(r_roots(params.b / (params.a * params.a)), key=lambda candidate: abs(1.0 / candidate - pole))
    inward = -1.0 if upper else 1.0
    v = pole + inward * math.exp(u)
    if v == 0:
        return general_case_at_v(params, component, v)
    # t - root = (1 - root v)/v = -root (v - pole)/v
    offset = PoleOffset(root=root, sign=math.copysign(1.0, -root * inward / v), log_gap=math.log(abs(root)) + u - math.log(abs(v)))
    return _general_state(params, component.t0, 1.0 / v, offset)


def general_case_s_increasing(params: RicciParams, component: GeneralComponent) -> bool:
    """Whether s increases with v along the component."""
    # ds/dv has the sign of d / (v0 (1 - v0 - B v0^2)) throughout the component
    v0 = component.v0
    B = params.b / (params.a * params.a)
    return params.d / (v0 * (1.0 - v0 - B * v0 * v0)) > 0


@frozen(kw_only=True)
class ProfileEvaluator:
    # noinspection PyUnresolvedReferences
    """
    Uniform radius evaluator s -> f(s) across all closed-form branches.

    Attributes:
        params(RicciParams): Parameters of the profile
        tolerance(float): Relative tolerance for implicit solves
    """

    params: RicciParams
    tolerance: float = 1e-13
    component: Optional[GeneralComponent] = field(init=False)

    @component.default
    def _default_component(self) -> Optional[GeneralComponent]:
        if self.params.a != 0 and self.params.b != 0:
            return general_case_component(self.params)
        return None

    def __call__(self, s: float) -> float:
        return self.f(s)

    def f(self, s: float) -> float:
        """Radius at arc length s."""
        p = self.params
        if p.a == 0:
            return eval_f_case_a0(p.b, p.c, p.d, s)
        if p.b == 0:
            if p.c == 0:
                radius = p.a * s + p.d / p.a
                if not radius > 0:
                    raise NonPositiveRadius("Cone radius %g is not positive at s=%s" % (radius, s))
                return radius
            return eval_f_case_b0(p.a, p.c, p.d, p.branch, s, self.tolerance)
        return self.state(s).f

    def fp(self, s: float) -> float:
        """Slope f'(s) from the reduction ODE."""
        f = self.f(s)
        return self.params.rhs(s, f) / f

    def state(self, s: float) -> GeneralCaseState:
        """
        General-case point at arc length s, inverting s(t) on the component.

        Raises:
            NoBracket: If s is outside the component
            NumericalError: If the inverted point misses s by more than INVERSION_TOLERANCE
        """
        component = self.component
        if component is None:
            raise BadParameters("Only general-case parameters have an auxiliary parameter")
        try:
            state = self._invert(component, s)
        except NoBracket as e:
            # At an attained end, rounding in s(v) can leave the target just outside the bracket
            for v_end, pole in ((component.v_lo, component.lo_pole), (component.v_hi, component.hi_pole)):
                if not pole:
                    end = general_case_at_v(self.params, component, v_end)
                    if abs(end.s - s) <= 1e-12 * max(1.0, abs(s)):
                        return end
            raise NoBracket("s=%s is outside the component of t0=%g: %s" % (s, component.t0, e.message)) from e
        if not abs(state.s - s) <= INVERSION_TOLERANCE * max(1.0, abs(s)):
            raise NumericalError("Inverting s(t) for s=%s reached s=%s at t=%s" % (s, state.s, state.t))
        return state

    def _invert(self, component: GeneralComponent, s: float) -> GeneralCaseState:
        increasing = general_case_s_increasing(self.params, component)
        if not (component.lo_pole or component.hi_pole):
            v = solve_monotone(
                lambda v: general_case_at_v(self.params, component, v).s - s,
                component.v_lo,
                component.v_hi,
                increasing=increasing,
                start=component.v0,
                lo_closed=True,
                hi_closed=True,
                rtol=self.tolerance,
            )
            return general_case_at_v(self.params, component, v)

        # Next to a pole, solve in u = log|v - pole|; with two poles, each takes half the component
        width = component.v_hi - component.v_lo
        if component.lo_pole and component.hi_pole:
            width /= 2.0
            middle = general_case_at_v(self.params, component, component.v_lo + width)
            upper = (s > middle.s) == increasing
        else:
            upper = component.hi_pole

        def chart(u: float) -> GeneralCaseState:
            return general_case_near_pole(self.params, component, upper, u)

        top = math.log(width)
        distance = component.v_hi - component.v0 if upper else component.v0 - component.v_lo
        u = solve_monotone(
            lambda u: chart(u).s - s,
            -math.inf,
            top,
            increasing=increasing != upper,
            start=math.log(distance) if 0 < distance < width else top - 1.0,
            hi_closed=True,
            rtol=self.tolerance,
            limit=CHART_LIMIT,
        )
        return chart(u)


def profile_function(params: RicciParams, tolerance: float = 1e-13) -> ProfileEvaluator:
    """Build a radius evaluator for a parameter set."""
    return ProfileEvaluator(params=params, tolerance=tolerance)


def seed_params(a: float, b: float, c: float, s0: float, x0: float) -> RicciParams:
    """Derive the integration constant (and branch or base point) whose closed form passes through (s0, x0)."""
    if not (x0 > 0 and (a * x0 + b * s0 + c) ** 2 < x0 * x0):
        raise NotInOmega("Seed (%g, %g) is outside the region for (a,b,c)=(%g,%g,%g)" % (s0, x0, a, b, c))
    if a == 0:
        d = x0 * x0 - b * s0 * s0 - 2.0 * c * s0
        branch = Branch.MINUS if 0 < b < 1 and c * c > b * d and s0 < -c / b else Branch.PLUS
        return RicciParams(a=a, b=b, c=c, d=d, branch=branch)
    if b == 0:
        w = a * x0 + c
        if w == 0:
            raise DegenerateError("Seed lies on the constant solution f = -c/a")
        if c == 0:
            return RicciParams(a=a, b=b, c=c, d=a * x0 - a * a * s0)
        branch = Branch.PLUS if w > 0 else Branch.MINUS
        return RicciParams(a=a, b=b, c=c, d=a * x0 - c * math.log(abs(w)) - a * a * s0, branch=branch)
    shift = s0 + c / b
    if shift == 0:
        raise DegenerateError("Seed lies on s = -c/b, where the auxiliary parameter is infinite")
    return RicciParams(a=a, b=b, c=c, d=shift, t0=x0 / (a * shift))


def _tangent_event(params: RicciParams, eps: float, s: float, x: float) -> float:
    return (1.0 - eps) * x * x - params.rhs(s, x) ** 2


def _locate(event: Callable[[float], float], s_old: float, s_new: float) -> Optional[float]:
    """First point in [s_old, s_new] where a positive event function reaches zero, if any."""
    if event(s_old) <= 0:
        return s_old
    grid = np.linspace(s_old, s_new, 17)
    previous = s_old
    for s in grid[1:]:
        value = event(s)
        if not math.isfinite(value):
            return previous
        if value <= 0:
            return float(brentq(event, min(previous, s), max(previous, s), xtol=1e-15, rtol=4.0 * MACHINE_EPSILON))
        previous = s
    return None


def _dense_slope(dense: Callable[[float], np.ndarray], s: float, step: float) -> float:
    """Slope of the interpolated radius at s, independent of the right-hand side the integrator followed."""
    delta = max(DENSE_DELTA * abs(step), DENSE_FLOOR)
    near = dense(s + delta)[0] - dense(s - delta)[0]
    far = dense(s + 2.0 * delta)[0] - dense(s - 2.0 * delta)[0]
    return float(8.0 * near - far) / (12.0 * delta)


# A point is (s, x, g, slope), with the slope taken from the interpolant when there is one
Point = Tuple[float, float, float, Optional[float]]


def _integrate(
    params: RicciParams, s0: float, x0: float, direction: float, eps: float, config: SolverConfig
) -> Tuple[List[Point], StopReason]:
    """Integrate (x, g) from the seed in one direction until a stopping condition."""
    floor = eps * 1e-6
    points: List[Point] = [(s0, x0, 0.0, None)]
    if x0 <= eps:
        return points, StopReason.AXIS
    if _tangent_event(params, eps, s0, x0) <= 0:
        logging.debug("Seed (%s, %s) is already within eps of a tangent", s0, x0)
        return points, StopReason.TANGENT

    def rhs(s: float, y: np.ndarray) -> np.ndarray:
        x = max(y[0], floor)
        slope = params.rhs(s, x) / x
        return np.array([slope, math.sqrt(max(0.0, 1.0 - slope * slope))])

    solver = DOP853(rhs, s0, np.array([x0, 0.0]), s0 + direction * config.span, rtol=config.rtol, atol=config.atol)
    for _ in range(config.max_steps):
        s_old = solver.t
        message = solver.step()
        if solver.status == "failed":
            logging.debug("Integrator stopped at s=%s: %s", solver.t, message)
            x_last = points[-1][1]
            return points, StopReason.AXIS if x_last <= math.sqrt(eps) else StopReason.TANGENT
        dense = solver.dense_output()
        step = solver.t - s_old
        if points[-1][3] is None and points[-1][0] == s_old:
            s_prev, x_prev, g_prev, _ = points[-1]
            points[-1] = (s_prev, x_prev, g_prev, _dense_slope(dense, s_old, step))

        def tangent(s: float) -> float:
            return _tangent_event(params, eps, s, float(dense(s)[0]))

        def axis(s: float) -> float:
            return float(dense(s)[0]) - eps

        hits = [(hit, reason) for hit, reason in ((_locate(tangent, s_old, solver.t), StopReason.TANGENT), (_locate(axis, s_old, solver.t), StopReason.AXIS)) if hit is not None]
        if hits:
            hit, reason = min(hits, key=lambda item: abs(item[0] - s_old))
            x_hit, g_hit = dense(hit)
            if abs(hit - points[-1][0]) > 0:
                points.append((float(hit), float(x_hit), float(g_hit), _dense_slope(dense, hit, step)))
            logging.debug("Integration toward %+d stopped at s=%s (%s)", direction, hit, reason.value)
            return points, reason
        points.append((float(solver.t), float(solver.y[0]), float(solver.y[1]), _dense_slope(dense, solver.t, step)))
        if solver.status == "finished":
            return points, StopReason.SPAN
    logging.warning("Integration toward %+d hit the step limit at s=%s", direction, solver.t)
    return points, StopReason.MAX_STEPS


def _ivp_sample(params: RicciParams, s: float, x: float, g: float, fp: Optional[float]) -> ProfileSample:
    quantities = curvature_sample(params, s, x)
    slope = params.rhs(s, x) / x if fp is None else fp
    return ProfileSample(s=s, f=x, fp=slope, g=g, K=quantities.K, H=quantities.H, residual=quantities.residual)


def solve_ivp(
    params: RicciParams, s0: float, x0: float, eps_boundary: Optional[float] = None, config: Optional[SolverConfig] = None
) -> ProfileCurve:
    """
    Integrate x' = (a x + b s + c)/x in both directions from a seed point.

    Args:
        params(RicciParams): Parameters, using a, b and c
        s0(float): Seed arc length
        x0(float): Seed radius
        eps_boundary(Optional[float]): Override for the boundary stopping tolerance
        config(Optional[SolverConfig]): Integrator settings

    Returns:
        ProfileCurve: Samples at the accepted steps, with g = 0 at the seed

    Raises:
        NotInOmega: If the seed is outside the region
    """
    config = config if config else SolverConfig()
    eps = eps_boundary if eps_boundary is not None else config.eps_boundary
    if not (x0 > 0 and params.rhs(s0, x0) ** 2 < x0 * x0):
        raise NotInOmega("Seed (%g, %g) is outside the region for (a,b,c)=(%g,%g,%g)" % (s0, x0, params.a, params.b, params.c))
    backward, stop_lo = _integrate(params, s0, x0, -1.0, eps, config)
    forward, stop_hi = _integrate(params, s0, x0, 1.0, eps, config)
    samples: List[ProfileSample] = []
    for s, x, g, fp in list(reversed(backward[1:])) + forward:
        if samples and s <= samples[-1].s:
            continue
        samples.append(_ivp_sample(params, s, x, g, fp))
    logging.info("IVP from (%g, %g): %d samples on [%g, %g], stops %s/%s", s0, x0, len(samples), samples[0].s, samples[-1].s, stop_lo.value, stop_hi.value)
    return ProfileCurve(params=params, samples=samples, s0_anchor=s0, stop_lo=stop_lo, stop_hi=stop_hi)
