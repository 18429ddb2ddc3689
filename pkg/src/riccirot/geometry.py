# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=too-many-arguments,too-many-positional-arguments:

"""
Height quadrature, profile sampling and surface meshing.
"""

# The surface is X(s, theta) = (f(s) cos(theta), f(s) sin(theta), g(s)), where the height g has
# g' = sqrt(1 - f'^2) >= 0.  The integrand is bounded by 1 but behaves like sqrt(s - e) next to
# an end e where |f'| reaches 1, so segments touching a finite end use s = e + u^2 (or e - u^2),
# which makes the integrand smooth in u.

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from .classify import classify
from .curvature import curvature_sample
from .interface import (
    BadParameters,
    Branch,
    DomainInterval,
    EndpointKind,
    OutsideDomain,
    ProfileCurve,
    ProfileSample,
    QuadratureError,
    RicciParams,
    SolverConfig,
    SurfaceMesh,
)
from .pool import map_ordered
from .profile import ProfileEvaluator, profile_function

QUAD_LIMIT = 200

# Relative distance from the asymptotic radius at which b = 0 sampling windows stop
ASYMPTOTE_GAP = 1e-8


def truncated(lo: float, hi: float) -> DomainInterval:
    """A user-chosen finite window, with both ends attained."""
    return DomainInterval(lo=lo, hi=hi, lo_kind=EndpointKind.TRUNCATED, hi_kind=EndpointKind.TRUNCATED, lo_closed=True, hi_closed=True)


def integrate(fn: Callable[[float], float], lo: float, hi: float, tolerance: float) -> float:
    """Adaptive quadrature of fn over [lo, hi]."""
    result = quad(fn, lo, hi, epsabs=tolerance, epsrel=tolerance, limit=QUAD_LIMIT, full_output=1)
    value, error = result[0], result[1]
    if len(result) > 3:
        logging.debug("Quadrature over [%s, %s] reported: %s", lo, hi, result[3])
        if error > 1e3 * max(tolerance, tolerance * abs(value)):
            raise QuadratureError("Quadrature over [%s, %s] did not converge: error estimate %g" % (lo, hi, error))
    return float(value)


def _slope_gap(evaluator: ProfileEvaluator) -> Callable[[float], float]:
    """The integrand g'(s) = sqrt(1 - f'(s)^2)."""

    def gap(s: float) -> float:
        fp = evaluator.fp(s)
        return math.sqrt(max(0.0, 1.0 - fp * fp))

    return gap


def _segment(gap: Callable[[float], float], lo: float, hi: float, open_lo: bool, open_hi: bool, tolerance: float) -> float:
    """Integrate the height increment over [lo, hi], opening the ends that sit on an interval end."""
    if lo == hi:
        return 0.0
    if open_lo and open_hi:
        mid = 0.5 * (lo + hi)
        return _segment(gap, lo, mid, True, False, tolerance) + _segment(gap, mid, hi, False, True, tolerance)
    if open_lo:
        return integrate(lambda u: 2.0 * u * gap(lo + u * u), 0.0, math.sqrt(hi - lo), tolerance)
    if open_hi:
        return integrate(lambda u: 2.0 * u * gap(hi - u * u), 0.0, math.sqrt(hi - lo), tolerance)
    return integrate(gap, lo, hi, tolerance)


def _at_end(s: float, end: float) -> bool:
    return math.isfinite(end) and s == end


def height_g(
    evaluator: ProfileEvaluator, s0: float, s: float, interval: Optional[DomainInterval] = None, tolerance: float = 1e-10
) -> float:
    """
    Height g(s) of the profile curve, with g(s0) = 0.

    Args:
        evaluator(ProfileEvaluator): Radius evaluator of the profile
        s0(float): Arc length where the height vanishes
        s(float): Arc length to evaluate at
        interval(Optional[DomainInterval]): Interval of definition, classified if omitted
        tolerance(float): Absolute and relative quadrature tolerance

    Returns:
        float: The height, negative when s < s0

    Raises:
        OutsideDomain: If either point is outside the interval
    """
    interval = interval if interval else classify(evaluator.params).interval
    for point in (s0, s):
        if not _inside(interval, point):
            raise OutsideDomain("s=%s is outside the interval (%s, %s)" % (point, interval.lo, interval.hi))
    lo, hi = min(s0, s), max(s0, s)
    value = _segment(_slope_gap(evaluator), lo, hi, _at_end(lo, interval.lo), _at_end(hi, interval.hi), tolerance)
    return value if s >= s0 else -value


def _inside(interval: DomainInterval, s: float) -> bool:
    if interval.lo_kind == EndpointKind.TRUNCATED or interval.hi_kind == EndpointKind.TRUNCATED:
        return interval.lo <= s <= interval.hi
    return interval.contains(s)


def _asymptote_cut(params: RicciParams) -> Optional[float]:
    """Arc length where a b = 0 profile comes within ASYMPTOTE_GAP of its asymptotic radius -c/a, if it has one."""
    a, c = params.a, params.c
    if params.b != 0 or a == 0 or c == 0 or not -c / a > 0:
        return None
    sigma = 1.0 if params.branch == Branch.PLUS else -1.0
    w = math.log(ASYMPTOTE_GAP * abs(c))
    return (sigma * math.exp(w) - c - c * w - params.d) / (a * a)


def sampling_window(interval: DomainInterval, config: Optional[SolverConfig] = None, params: Optional[RicciParams] = None) -> Tuple[float, float]:
    """
    Turn an interval into a finite sampling window.

    Attained ends are kept exactly.  An infinite end is replaced by a point window_span away from
    the other end (or from zero), and an open finite end is moved inward by open_margin of the window.
    When params are given, an infinite end of a b = 0 profile is also cut where the radius is within
    ASYMPTOTE_GAP of -c/a, since further out it no longer differs from the constant in floating point.
    """
    config = config if config else SolverConfig()
    lo, hi = interval.lo, interval.hi
    if math.isinf(lo) and math.isinf(hi):
        lo, hi = -config.window_span, config.window_span
    elif math.isinf(lo):
        lo = hi - config.window_span
    elif math.isinf(hi):
        hi = lo + config.window_span
    cut = _asymptote_cut(params) if params else None
    if cut is not None and lo < cut < hi:
        # s grows like -c w / a^2 as w -> -inf, so the asymptote sits at the infinite end on the side of c
        if params.c > 0 and math.isinf(interval.hi):
            hi = cut
        elif params.c < 0 and math.isinf(interval.lo):
            lo = cut
    margin = config.open_margin * (hi - lo)
    if math.isfinite(interval.lo) and not _attained(interval, upper=False):
        lo += margin
    if math.isfinite(interval.hi) and not _attained(interval, upper=True):
        hi -= margin
    return lo, hi


def _attained(interval: DomainInterval, upper: bool) -> bool:
    kind, closed = (interval.hi_kind, interval.hi_closed) if upper else (interval.lo_kind, interval.lo_closed)
    return closed or kind == EndpointKind.TRUNCATED


def clustered_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """Grid on [lo, hi] that clusters toward both ends and is exactly symmetric about the midpoint."""
    if n < 2:
        raise BadParameters("At least two samples are required, got %d" % n)
    phase = np.pi * (np.arange(n) - (n - 1) / 2.0) / (n - 1)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.sin(phase)


def _sample_point(params: RicciParams, evaluator: ProfileEvaluator, s: float) -> Tuple[float, float, float, float, float]:
    f = evaluator.f(s)
    quantities = curvature_sample(params, s, f)
    return f, params.rhs(s, f) / f, quantities.K, quantities.H, quantities.residual


def sample_profile(
    params: RicciParams,
    interval: Optional[DomainInterval] = None,
    n: int = 101,
    config: Optional[SolverConfig] = None,
    threads: Optional[int] = None,
) -> ProfileCurve:
    """
    Sample a profile curve on a clustered grid over its sampling window.

    Args:
        params(RicciParams): Parameters of the profile
        interval(Optional[DomainInterval]): Interval to sample, classified if omitted
        n(int): Number of samples
        config(Optional[SolverConfig]): Numerical settings
        threads(Optional[int]): Worker pool size for the per-point evaluations

    Returns:
        ProfileCurve: Samples with g anchored at 0 when 0 is in the window, else at the midpoint
    """
    config = config if config else SolverConfig()
    interval = interval if interval else classify(params).interval
    lo, hi = sampling_window(interval, config, params)
    grid = clustered_grid(lo, hi, n)
    evaluator = profile_function(params, config.bracket_tolerance)
    points = map_ordered(lambda s: _sample_point(params, evaluator, float(s)), list(grid), threads)

    anchor = 0.0 if lo <= 0.0 <= hi else 0.5 * (lo + hi)
    heights = _cumulative_heights(evaluator, [float(s) for s in grid], anchor, interval, config.quad_tolerance)
    samples = [
        ProfileSample(s=float(s), f=f, fp=fp, g=g, K=K, H=H, residual=residual)
        for s, (f, fp, K, H, residual), g in zip(grid, points, heights)
    ]
    logging.info("Sampled %d points of (%g,%g,%g,%g) on [%g, %g], g anchored at %g", n, params.a, params.b, params.c, params.d, lo, hi, anchor)
    return ProfileCurve(params=params, samples=samples, s0_anchor=anchor)


def _cumulative_heights(evaluator: ProfileEvaluator, grid: Sequence[float], anchor: float, interval: DomainInterval, tolerance: float) -> List[float]:
    """Heights at increasing grid points, integrating once per gap between neighbouring points."""
    gap = _slope_gap(evaluator)
    knots = sorted(set(grid) | {anchor})
    totals = [0.0]
    for left, right in zip(knots, knots[1:]):
        totals.append(totals[-1] + _segment(gap, left, right, _at_end(left, interval.lo), _at_end(right, interval.hi), tolerance))
    offset = totals[knots.index(anchor)]
    lookup = dict(zip(knots, totals))
    return [lookup[s] - offset for s in grid]


def surface_point(f: float, g: float, theta: float) -> np.ndarray:
    """The surface point X(s, theta) for radius f and height g."""
    return np.array([f * math.cos(theta), f * math.sin(theta), g])


def surface_tangent_s(fp: float, gp: float, theta: float) -> np.ndarray:
    """The tangent X_s(s, theta) for slopes f' and g'."""
    return np.array([fp * math.cos(theta), fp * math.sin(theta), gp])


def build_mesh(profile: ProfileCurve, n_theta: int = 48) -> SurfaceMesh:
    """
    Sweep a sampled profile around the z-axis.

    Args:
        profile(ProfileCurve): Sampled profile
        n_theta(int): Number of angular samples, theta_j = 2 pi j / n_theta

    Returns:
        SurfaceMesh: Vertex grid with vertex (i, j) at row i * n_theta + j
    """
    if n_theta < 3:
        raise BadParameters("A mesh needs at least 3 angular samples, got %d" % n_theta)
    if len(profile) < 2:
        raise BadParameters("A mesh needs at least 2 profile samples, got %d" % len(profile))
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    f = profile.column("f")[:, np.newaxis]
    g = profile.column("g")[:, np.newaxis]
    vertices = np.stack(
        [f * np.cos(theta)[np.newaxis, :], f * np.sin(theta)[np.newaxis, :], np.repeat(g, n_theta, axis=1)], axis=-1
    ).reshape(-1, 3)
    return SurfaceMesh(vertices=vertices, n_s=len(profile), n_theta=n_theta)
