# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=too-many-return-statements,too-many-branches:

"""
Decide which classification result applies to a parameter set, with maximal domains and descriptors.
"""

# Case a = 0.  Here f^2 = Q(s) = b s^2 + 2 c s + d and K = (c^2 - b d)/Q^2, so the sign of
# c^2 - b d fixes the curvature sign.  The slope condition f'^2 <= 1 is P(s) >= 0, where
#
#   P(s) = f^2 - (b s + c)^2 = b (1 - b) s^2 + 2 (1 - b) c s - c^2 + d
#
# Case b = 0.  K = c (a f + c)/f^4, so K has the sign of c on the plus branch and the sign of
# -c on the minus branch.  The profile ends where |f'| = 1, at radius c/(1 - a) on the plus
# branch and -c/(1 + a) on the minus branch, and it is asymptotic to the cylinder of radius
# -c/a at the other end whenever that radius is positive.
#
# General case.  K has the sign of -b R(t0) on the whole component containing t0.

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .interface import (
    BadParameters,
    Branch,
    BranchViolation,
    CaseTag,
    ClassificationReport,
    DegenerateError,
    DomainError,
    DomainInterval,
    EndpointKind,
    KSign,
    ParameterSet,
    RicciParams,
)
from .params import omega_region, require_admissible
from .profile import (
    GeneralComponent,
    b_zero_endpoint_radius,
    b_zero_inverse,
    general_case_at_v,
    general_case_component,
    general_case_poles,
    general_case_v_bounds,
    r_roots,
)

MAXIMAL_BOUND = "maximal admissible bound"
MARGINAL = "marginal"
DEGENERATE = "degenerate"

# Relative size of c^2 - b d below which the sign is reported as marginal
SIGN_TOLERANCE = 1e-12

# Largest deviation from an affine fit for a profile to count as flat
FLAT_TOLERANCE = 1e-10

INF = math.inf


def _interval(lo: float, hi: float, lo_kind: EndpointKind, hi_kind: EndpointKind, closed: bool = False) -> DomainInterval:
    """Build an interval; finite polynomial roots and barriers are attained, other finite ends are not."""
    attained = (EndpointKind.POLYNOMIAL_ROOT, EndpointKind.BARRIER)
    return DomainInterval(
        lo=lo,
        hi=hi,
        lo_kind=lo_kind,
        hi_kind=hi_kind,
        lo_closed=closed or (math.isfinite(lo) and lo_kind in attained),
        hi_closed=closed or (math.isfinite(hi) and hi_kind in attained),
    )


def _whole_line() -> DomainInterval:
    return _interval(-INF, INF, EndpointKind.INFINITE, EndpointKind.INFINITE)


def _sign(value: float, scale: float) -> Tuple[KSign, bool]:
    """Sign of value, and whether it is within the relative tolerance of zero without being zero."""
    marginal = value != 0 and abs(value) <= SIGN_TOLERANCE * scale
    if value < 0:
        return KSign.NEGATIVE, marginal
    if value > 0:
        return KSign.POSITIVE, marginal
    return KSign.ZERO, False


def p_roots(b: float, c: float, d: float) -> Tuple[float, float]:
    """Roots of P(s) = b (1 - b) s^2 + 2 (1 - b) c s - c^2 + d, ascending."""
    disc = (1.0 - b) * (c * c - b * d)
    if disc < 0:
        raise DomainError("P(s) has no real roots for (b,c,d)=(%g,%g,%g)" % (b, c, d))
    root = math.sqrt(disc)
    denominator = b * (1.0 - b)
    ends = sorted([(-(1.0 - b) * c - root) / denominator, (-(1.0 - b) * c + root) / denominator])
    return ends[0], ends[1]


def cone_descriptors(m: float, r: float, s_anchor: float = 0.0) -> Dict[str, float]:
    """Slope, half-angle and vertex height of the cone swept by f = m s + r, with g = 0 at s_anchor."""
    descriptors = {"m": m, "r": r}
    if 0 < abs(m) < 1:
        rise = math.sqrt(1.0 - m * m)
        descriptors["phi"] = 2.0 * math.atan(abs(m) / rise)
        descriptors["v"] = -(rise / m) * (m * s_anchor + r)
    return descriptors


def maximal_interval_a0(b: float, c: float, d: float, branch: Branch = Branch.PLUS) -> DomainInterval:
    """
    Maximal admissible interval of an a = 0 profile, where f^2 = b s^2 + 2 c s + d.

    Args:
        b(float): Coefficient of s
        c(float): Constant term
        d(float): Integration constant
        branch(Branch): Picks the half-line when 0 < b < 1 and K > 0, MINUS for the left one

    Returns:
        DomainInterval: The interval where Q > 0 and P >= 0

    Raises:
        DegenerateError: If b = c = 0
        DomainError: If no point has both Q > 0 and P >= 0
    """
    if b == 0 and c == 0:
        raise DegenerateError("Both b and c vanish, so the profile is a cylinder on the whole line")
    disc = c * c - b * d
    if b == 0:
        vertex = (c * c - d) / (2.0 * c)
        if c > 0:
            return _interval(vertex, INF, EndpointKind.POLYNOMIAL_ROOT, EndpointKind.INFINITE)
        return _interval(-INF, vertex, EndpointKind.INFINITE, EndpointKind.POLYNOMIAL_ROOT)
    if disc == 0:
        if not 0 < b <= 1:
            raise DomainError("With c^2 = b d the slope is sqrt(b), which needs 0 < b <= 1, got b=%g" % b)
        if branch == Branch.MINUS:
            return _interval(-INF, -c / b, EndpointKind.INFINITE, EndpointKind.RADICAND_ZERO)
        return _interval(-c / b, INF, EndpointKind.RADICAND_ZERO, EndpointKind.INFINITE)
    if disc < 0:
        if b < 0:
            raise DomainError("Q(s) is negative everywhere for (b,c,d)=(%g,%g,%g)" % (b, c, d))
        if b <= 1:
            return _whole_line()
        s1, s2 = p_roots(b, c, d)
        return _interval(s1, s2, EndpointKind.POLYNOMIAL_ROOT, EndpointKind.POLYNOMIAL_ROOT)
    if b < 0:
        s1, s2 = p_roots(b, c, d)
        return _interval(s1, s2, EndpointKind.POLYNOMIAL_ROOT, EndpointKind.POLYNOMIAL_ROOT)
    if b < 1:
        s1, s2 = p_roots(b, c, d)
        if branch == Branch.MINUS:
            return _interval(-INF, s1, EndpointKind.INFINITE, EndpointKind.POLYNOMIAL_ROOT)
        return _interval(s2, INF, EndpointKind.POLYNOMIAL_ROOT, EndpointKind.INFINITE)
    raise DomainError("P(s) < 0 everywhere for (b,c,d)=(%g,%g,%g), so no slope is admissible" % (b, c, d))


def _classify_a0(params: RicciParams) -> ClassificationReport:
    b, c, d = params.b, params.c, params.d
    flags: List[str] = []
    if b == 0 and c == 0:
        if d <= 0:
            raise DomainError("Cylinder radius squared d=%g is not positive" % d)
        return ClassificationReport(
            params=params,
            case=CaseTag.FLAT_CYLINDER,
            k_sign=KSign.ZERO,
            interval=_whole_line(),
            complete=True,
            descriptors={"r": math.sqrt(d)},
        )

    k_sign, marginal = _sign(c * c - b * d, max(c * c, abs(b * d)))
    if marginal:
        flags.append(MARGINAL)
    interval = maximal_interval_a0(b, c, d, params.branch)
    descriptors: Dict[str, float] = {}

    if k_sign == KSign.ZERO:
        flags.append(MARGINAL)
        m = math.sqrt(b) if params.branch == Branch.PLUS else -math.sqrt(b)
        case = CaseTag.FLAT_PLANE if b == 1 else CaseTag.FLAT_CONE
        descriptors.update(cone_descriptors(m, m * c / b))
    elif k_sign == KSign.NEGATIVE:
        case = CaseTag.CATENOIDAL_RICCI if b <= 1 else CaseTag.NEGATIVE_A0
        descriptors["neck_radius"] = math.sqrt((b * d - c * c) / b)
        descriptors["neck_s"] = -c / b
    else:
        case = CaseTag.POSITIVE_A0

    for name, value in (("s1", interval.lo), ("s2", interval.hi)):
        if math.isfinite(value):
            descriptors[name] = value
    complete = interval.complete
    if not complete:
        flags.append(MAXIMAL_BOUND)
    return ClassificationReport(
        params=params,
        case=case,
        k_sign=k_sign,
        interval=interval,
        complete=complete,
        catenoid=case == CaseTag.CATENOIDAL_RICCI and b == 1,
        descriptors=descriptors,
        flags=flags,
    )


def _classify_b0(params: RicciParams) -> ClassificationReport:
    a, c, d, branch = params.a, params.c, params.d, params.branch
    if c == 0:
        # f = a s + d/a, a cone through the axis at s = -d/a^2
        vertex = -d / (a * a)
        if a > 0:
            interval = _interval(vertex, INF, EndpointKind.RADICAND_ZERO, EndpointKind.INFINITE)
        else:
            interval = _interval(-INF, vertex, EndpointKind.INFINITE, EndpointKind.RADICAND_ZERO)
        return ClassificationReport(
            params=params,
            case=CaseTag.FLAT_CONE,
            k_sign=KSign.ZERO,
            interval=interval,
            descriptors=cone_descriptors(a, d / a),
            flags=[MAXIMAL_BOUND],
        )

    sigma = params.sigma
    if sigma * c < 0 and sigma * a <= 0:
        raise BranchViolation("a f + c never has sign %+d for positive f with a=%g, c=%g" % (sigma, a, c))
    k_sign = KSign.NEGATIVE if sigma * c < 0 else KSign.POSITIVE

    descriptors: Dict[str, float] = {}
    asymptote = -c / a
    if asymptote > 0:
        descriptors["asymptote"] = asymptote
    radius = b_zero_endpoint_radius(a, c, branch)
    s0: Optional[float] = None
    if radius is not None:
        s0 = b_zero_inverse(a, c, d, branch, radius)
        descriptors["s0"] = s0
        descriptors["f0"] = radius

    # The profile increases on the plus branch and decreases on the minus branch, so the
    # asymptotic end is on the left for plus and on the right for minus, and vice versa for K > 0.
    asymptotic_left = (k_sign == KSign.NEGATIVE) == (branch == Branch.PLUS)
    if k_sign == KSign.NEGATIVE and 0 < sigma * a <= 1:
        case = CaseTag.FUNNEL_RICCI
        interval = _whole_line()
    else:
        case = CaseTag.NEGATIVE_B0 if k_sign == KSign.NEGATIVE else CaseTag.POSITIVE_B0
        if s0 is None:
            raise DomainError("No endpoint radius for (a,c)=(%g,%g) on the %s branch" % (a, c, branch.value))
        if asymptotic_left:
            interval = _interval(-INF, s0, EndpointKind.INFINITE, EndpointKind.BARRIER)
        else:
            interval = _interval(s0, INF, EndpointKind.BARRIER, EndpointKind.INFINITE)

    complete = interval.complete
    return ClassificationReport(
        params=params,
        case=case,
        k_sign=k_sign,
        interval=interval,
        complete=complete,
        descriptors=descriptors,
        flags=[] if complete else [MAXIMAL_BOUND],
    )


def _pole_vanishes(B: float, root: float, from_below: bool) -> bool:
    """Whether E(t) tends to zero as t approaches a root of R from the given side."""
    roots = r_roots(B)
    if len(roots) == 1:
        return from_below
    near, other = sorted(roots, key=lambda candidate: abs(candidate - root))
    return near / (near - other) < 0


def _component_end(params: RicciParams, component: GeneralComponent, upper: bool) -> Tuple[float, EndpointKind]:
    """Arc length and kind at one end of a general-case component."""
    v = component.v_hi if upper else component.v_lo
    pole = component.hi_pole if upper else component.lo_pole
    if not pole:
        return general_case_at_v(params, component, v).s, EndpointKind.POLYNOMIAL_ROOT
    B = params.b / (params.a * params.a)
    root = 1.0 / v
    if _pole_vanishes(B, root, from_below=not upper):
        return -params.c / params.b, EndpointKind.ASYMPTOTE
    return math.copysign(INF, params.d * component.t0 / root), EndpointKind.INFINITE


def _classify_general(params: RicciParams) -> ClassificationReport:
    a, b = params.a, params.b
    if params.d == 0:
        raise BadParameters("The general case requires d != 0")
    component = general_case_component(params)
    B = b / (a * a)
    t0 = component.t0
    R0 = t0 * t0 - t0 - B
    k_sign = KSign.NEGATIVE if -b * R0 < 0 else KSign.POSITIVE

    ends = [_component_end(params, component, upper=False), _component_end(params, component, upper=True)]
    ends.sort(key=lambda end: end[0])
    (lo, lo_kind), (hi, hi_kind) = ends
    interval = _interval(lo, hi, lo_kind, hi_kind)

    descriptors: Dict[str, float] = {"B": B, "t0": t0, "v_lo": component.v_lo, "v_hi": component.v_hi}
    for index, root in enumerate(r_roots(B), start=1):
        descriptors["t%d" % index] = root
    logging.debug("General case (%g,%g,%g,%g): component v in [%g, %g], s in (%g, %g)", a, b, params.c, params.d, component.v_lo, component.v_hi, lo, hi)
    return ClassificationReport(
        params=params,
        case=CaseTag.GENERAL_CASE,
        k_sign=k_sign,
        interval=interval,
        complete=False,
        descriptors=descriptors,
        flags=[MAXIMAL_BOUND],
    )


def classify(params: RicciParams) -> ClassificationReport:
    """
    Classify a parameter set.

    Args:
        params(RicciParams): Parameters to classify

    Returns:
        ClassificationReport: Case, curvature sign, maximal interval and descriptors

    Raises:
        InadmissibleError: If (a, b, c) lies in the excluded set
        DomainError: If no profile exists for the integration constant or branch
    """
    require_admissible(params)
    if params.a == 0:
        report = _classify_a0(params)
    elif params.b == 0:
        report = _classify_b0(params)
    else:
        report = _classify_general(params)
    if omega_region(params).degenerate:
        report.flags.append(DEGENERATE)
    logging.info("Classified (%g,%g,%g,%g) as %s on (%s, %s)", params.a, params.b, params.c, params.d, report.case.value, report.interval.lo, report.interval.hi)
    return report


def general_case_J(a: float, b: float) -> ParameterSet:
    """
    Admissible values of the auxiliary parameter t for a != 0 and b != 0.

    The slope bound -1 <= a + b/(a t) <= 1 is an interval [v_lo, v_hi] in v = 1/t, mapped back
    to one or two closed t-intervals.  Roots of R inside those intervals are listed as excluded.
    """
    if a == 0 or b == 0:
        raise BadParameters("The auxiliary parameter is only defined for a != 0 and b != 0")
    v_lo, v_hi = general_case_v_bounds(a, b)
    if v_lo > 0 or v_hi < 0:
        intervals = [(1.0 / v_hi, 1.0 / v_lo)]
    elif v_lo == 0:
        intervals = [(1.0 / v_hi, INF)]
    elif v_hi == 0:
        intervals = [(-INF, 1.0 / v_lo)]
    else:
        intervals = [(-INF, 1.0 / v_lo), (1.0 / v_hi, INF)]
    excluded = [1.0 / p for p in general_case_poles(a, b) if v_lo <= p <= v_hi]
    return ParameterSet(v_lo=v_lo, v_hi=v_hi, intervals=intervals, excluded=sorted(excluded))


def detect_flat(s_values: Sequence[float], f_values: Sequence[float], s_anchor: float = 0.0) -> Optional[Tuple[CaseTag, Dict[str, float]]]:
    """
    Detect an affine profile, which sweeps a cylinder, cone or plane.

    Args:
        s_values(Sequence[float]): Arc lengths of the samples
        f_values(Sequence[float]): Radii of the samples
        s_anchor(float): Arc length where the height is zero, used for the cone vertex

    Returns:
        Optional[Tuple[CaseTag, Dict[str, float]]]: Flat tag and descriptors, or None if the profile is not affine
    """
    s = np.asarray(s_values, dtype=float)
    f = np.asarray(f_values, dtype=float)
    if len(s) < 2:
        return None
    m, r = np.polyfit(s, f, 1)
    if float(np.max(np.abs(f - (m * s + r)))) > FLAT_TOLERANCE:
        return None
    m, r = float(m), float(r)
    if abs(m) <= FLAT_TOLERANCE:
        return CaseTag.FLAT_CYLINDER, {"r": float(np.mean(f))}
    if abs(abs(m) - 1.0) <= FLAT_TOLERANCE:
        return CaseTag.FLAT_PLANE, {"m": math.copysign(1.0, m), "r": r}
    return CaseTag.FLAT_CONE, cone_descriptors(m, r, s_anchor)
