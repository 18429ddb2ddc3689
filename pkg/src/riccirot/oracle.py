# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=too-many-locals:

"""
Independent finite-difference and brute-force validators for profile curves.
"""

# None of the checks here use the closed-form derivative formulas they are checking: curvature
# derivatives come from central differences of K, the arc-length identity from central
# differences of f and of heights, and the curvature itself from -f''/f.
#
# Central differences amplify the rounding in K by 1/h^2.  Each stencil carries an estimate of that
# noise, and centres where it could reach the tolerance are counted as unresolved and skipped.

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from attrs import frozen

from .classify import classify
from .curvature import CANCELLATION, curvature_sample, gauss_K, ricci_residual
from .geometry import height_g, sampling_window, truncated
from .interface import (
    BadParameters,
    Branch,
    DomainError,
    InadmissibleError,
    NonNegativeK,
    ParamFamily,
    ProfileCurve,
    RicciParams,
    SolverConfig,
    StopReason,
    TooFewSamples,
    ValidationReport,
    ValidationTolerances,
)
from .profile import MACHINE_EPSILON, ProfileEvaluator, eval_general_case, profile_function, seed_params, solve_ivp

# Resampled points per validation
RESAMPLE_LIMIT = 201

# How closely IVP stopping points must approach a finite interval end
ENDPOINT_APPROACH = 1e-3

MAX_DRAWS = 1000

# Relative error of radii from the implicit and auxiliary-parameter closed forms
RADIUS_NOISE = 64 * MACHINE_EPSILON

# Finite-difference points count as resolved while their noise stays below this share of the tolerance
RESOLUTION = 0.25

# Closed forms used as a reference are solved to the last bits
ORACLE_TOLERANCE = 1e-15

HEIGHT_TOLERANCE = 1e-13


def _uniform_step(s: np.ndarray) -> float:
    steps = np.diff(s)
    h = float(np.mean(steps))
    if not h > 0 or float(np.max(np.abs(steps - h))) > 1e-9 * max(1.0, float(np.max(np.abs(s)))):
        raise BadParameters("Samples must be uniformly spaced with increasing s")
    return h


def fd_gauss_K(s_values: Sequence[float], f_values: Sequence[float]) -> np.ndarray:
    """
    Curvature -f''/f at interior points by central second differences.

    Args:
        s_values(Sequence[float]): Uniformly spaced arc lengths
        f_values(Sequence[float]): Radii at those arc lengths

    Returns:
        np.ndarray: K at s_values[1:-1]

    Raises:
        TooFewSamples: If fewer than 5 samples are given
    """
    s = np.asarray(s_values, dtype=float)
    f = np.asarray(f_values, dtype=float)
    if len(s) < 5 or len(f) != len(s):
        raise TooFewSamples("Need at least 5 matching samples, got %d" % min(len(s), len(f)))
    h = _uniform_step(s)
    fpp = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / (h * h)
    return -fpp / f[1:-1]


def _log_condition_terms(K: np.ndarray, f: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """Raw residual 4K - lap log(-K) and the sum of magnitudes of its terms, at interior points."""
    log_k = np.log(-K)
    lpp = (log_k[2:] - 2.0 * log_k[1:-1] + log_k[:-2]) / (h * h)
    lp = (log_k[2:] - log_k[:-2]) / (2.0 * h)
    ratio = (f[2:] - f[:-2]) / (2.0 * h) / f[1:-1]
    raw = 4.0 * K[1:-1] - (lpp + ratio * lp)
    return raw, 4.0 * np.abs(K[1:-1]) + np.abs(lpp) + np.abs(ratio * lp)


def fd_log_condition(K_samples: Sequence[float], f_samples: Sequence[float], h: float) -> np.ndarray:
    """
    Residual of 4K = lap log(-K) at interior points, by central differences with step h.

    Raises:
        NonNegativeK: If any K is not negative
        TooFewSamples: If fewer than 3 samples are given
    """
    K = np.asarray(K_samples, dtype=float)
    f = np.asarray(f_samples, dtype=float)
    if len(K) < 3 or len(f) != len(K):
        raise TooFewSamples("Need at least 3 matching samples, got %d" % min(len(K), len(f)))
    if np.any(K >= 0):
        raise NonNegativeK("The log condition needs K < 0 at every sample")
    raw, _ = _log_condition_terms(K, f, h)
    return raw


def _closed_form(curve: ProfileCurve) -> Optional[ProfileEvaluator]:
    """Radius evaluator matching the curve, derived from the seed for IVP curves."""
    params = curve.params
    try:
        if curve.stop_lo is not None:
            seed = min(curve.samples, key=lambda sample: abs(sample.s - curve.s0_anchor))
            params = seed_params(params.a, params.b, params.c, seed.s, seed.f)
        return profile_function(params, ORACLE_TOLERANCE)
    except DomainError as e:
        logging.debug("No closed form for the curve: %s", e.message)
        return None


@frozen(kw_only=True)
class FdResiduals:
    # noinspection PyUnresolvedReferences
    """
    Finite-difference residuals over a set of stencil centres.

    Centres where the rounding noise carried into the stencil could reach the tolerance are
    counted as unresolved and left out of the maxima.

    Attributes:
        ricci(float): Largest normalized Ricci residual over the resolved centres
        log_condition(Optional[float]): Largest normalized log condition residual, None unless K < 0 at every stencil point
        ricci_unresolved(int): Number of centres left out of the Ricci residual
        log_unresolved(int): Number of centres left out of the log condition residual
    """

    ricci: float
    log_condition: Optional[float]
    ricci_unresolved: int = 0
    log_unresolved: int = 0


def _radius_noise(evaluator: ProfileEvaluator, s: float, f: float) -> float:
    """Relative rounding error of an evaluated radius."""
    params = evaluator.params
    if params.a == 0:
        radicand = abs(params.b) * s * s + abs(2.0 * params.c * s) + abs(params.d)
        return MACHINE_EPSILON * (1.0 + radicand / (2.0 * f * f))
    if evaluator.component is not None:
        # f = a d t0 exp(exponent), where the exponent carries the rounding of its logarithms
        return RADIUS_NOISE * (1.0 + abs(math.log(f / abs(params.a * params.d * evaluator.component.t0))))
    return RADIUS_NOISE


def _k_noise(params: RicciParams, s: float, f: float, K: float, radius_noise: float) -> float:
    """Absolute error of the closed-form K at a radius carrying relative error radius_noise."""
    a, b, c = params.a, params.b, params.c
    u = b * s + c
    # K is flushed to zero below CANCELLATION of its terms
    rounding = CANCELLATION if K == 0 else MACHINE_EPSILON
    terms = u * u + abs(a * f * u) + abs(b) * f * f + (abs(b * s) + abs(c)) * (2.0 * abs(u) + abs(a) * f)
    numerator = rounding * terms + radius_noise * (abs(a * f * u) + 2.0 * abs(b) * f * f)
    return numerator / f**4 + 4.0 * radius_noise * abs(K)


def _resolved(raw: float, scale: float, noise: float, tolerance: float) -> Optional[float]:
    if raw == 0:
        return 0.0
    if noise > RESOLUTION * tolerance * scale:
        return None
    return abs(raw) / scale


def _stencil_residuals(
    evaluator: ProfileEvaluator, x: float, tolerances: ValidationTolerances
) -> Tuple[Optional[float], Optional[float], bool]:
    """Ricci and log condition residuals on the three-point stencil at x, and whether K < 0 on it."""
    params, h = evaluator.params, tolerances.h
    s = [x - h, x, x + h]
    f = np.array([evaluator.f(point) for point in s])
    K = np.array([gauss_K(params, point, float(radius)) for point, radius in zip(s, f)])
    radius_noise = max(_radius_noise(evaluator, point, float(radius)) for point, radius in zip(s, f))
    k_noise = max(_k_noise(params, point, float(radius), float(k), radius_noise) for point, radius, k in zip(s, f, K))

    k = float(K[1])
    kp = float(K[2] - K[0]) / (2.0 * h)
    kpp = float(K[2] - 2.0 * K[1] + K[0]) / (h * h)
    fp = float(f[2] - f[0]) / (2.0 * h)
    ratio = fp / float(f[1])
    raw = ricci_residual(k, kp, kpp, float(f[1]), fp)
    scale = abs(k * kpp) + kp * kp + 4.0 * abs(k) ** 3 + abs(ratio * k * kp)
    noise = (
        abs(k) * 4.0 * k_noise / (h * h)
        + abs(kpp) * k_noise
        + 2.0 * abs(kp) * k_noise / h
        + 12.0 * k * k * k_noise
        + abs(ratio) * (abs(k) * k_noise / h + abs(kp) * k_noise)
        + abs(k * kp) * radius_noise / h
    )
    ricci = _resolved(raw, scale, noise, tolerances.ricci_fd)

    negative = bool(np.all(K < 0))
    if not negative:
        return ricci, None, False
    log_raw, log_scale = _log_condition_terms(K, f, h)
    log_noise = k_noise / float(np.min(np.abs(K)))
    lp = float(math.log(-K[2]) - math.log(-K[0])) / (2.0 * h)
    noise = 4.0 * k_noise + 4.0 * log_noise / (h * h) + abs(ratio) * log_noise / h + abs(lp) * radius_noise / h
    return ricci, _resolved(float(log_raw[0]), float(log_scale[0]), noise, tolerances.log_condition), True


def fd_residuals(evaluator: ProfileEvaluator, centres: Sequence[float], tolerances: Optional[ValidationTolerances] = None) -> FdResiduals:
    """
    Normalized Ricci and log condition residuals from central differences of the closed-form K.

    Args:
        evaluator(ProfileEvaluator): Radius evaluator of the profile
        centres(Sequence[float]): Stencil centres, at least h inside the interval
        tolerances(Optional[ValidationTolerances]): Supplies the step h and the thresholds that decide resolution

    Returns:
        FdResiduals: Largest residuals over the resolved centres, with the unresolved counts
    """
    tolerances = tolerances if tolerances else ValidationTolerances()
    ricci: List[float] = []
    log: List[float] = []
    ricci_unresolved, log_unresolved, negative = 0, 0, True
    for x in centres:
        ricci_value, log_value, stencil_negative = _stencil_residuals(evaluator, float(x), tolerances)
        if ricci_value is None:
            ricci_unresolved += 1
        else:
            ricci.append(ricci_value)
        negative = negative and stencil_negative
        if log_value is None:
            log_unresolved += 1 if stencil_negative else 0
        else:
            log.append(log_value)
    return FdResiduals(
        ricci=max(ricci, default=0.0),
        log_condition=max(log, default=0.0) if negative else None,
        ricci_unresolved=ricci_unresolved,
        log_unresolved=log_unresolved if negative else 0,
    )


def _resampled_checks(
    curve: ProfileCurve, evaluator: ProfileEvaluator, tolerances: ValidationTolerances
) -> Tuple[FdResiduals, float, float, int]:
    """Finite-difference residuals, arc-length violation and curvature error on an even grid inside the curve."""
    params = evaluator.params
    h, h_k = tolerances.h, tolerances.h_k
    # the height has unbounded third derivative at an attained end, so keep the stencils well inside
    margin = max(2.0 * max(h, h_k), 0.01 * (curve.samples[-1].s - curve.samples[0].s))
    lo, hi = curve.samples[0].s + margin, curve.samples[-1].s - margin
    if not hi > lo:
        return FdResiduals(ricci=0.0, log_condition=None), 0.0, 0.0, 0
    interval = truncated(curve.samples[0].s, curve.samples[-1].s)
    grid = [float(value) for value in np.linspace(lo, hi, min(len(curve), RESAMPLE_LIMIT))]

    arclength, k_closed, k_fd = [], [], []
    for x in grid:
        fp = (evaluator.f(x + h) - evaluator.f(x - h)) / (2.0 * h)
        gp = (height_g(evaluator, x, x + h, interval, HEIGHT_TOLERANCE) - height_g(evaluator, x, x - h, interval, HEIGHT_TOLERANCE)) / (2.0 * h)
        arclength.append(abs(fp * fp + gp * gp - 1.0))
        stencil = [x + k * h_k for k in (-2, -1, 0, 1, 2)]
        k_fd.append(float(fd_gauss_K(stencil, [evaluator.f(point) for point in stencil])[1]))
        k_closed.append(gauss_K(params, x, evaluator.f(x)))

    scale = max(abs(value) for value in k_closed)
    k_error = max(abs(a - b) for a, b in zip(k_fd, k_closed)) / (scale if scale > 0 else 1.0)
    return fd_residuals(evaluator, grid, tolerances), max(arclength), k_error, len(grid)


def validate_curve(curve: ProfileCurve, tolerances: Optional[ValidationTolerances] = None) -> ValidationReport:
    """
    Validate a profile curve with independent checks.

    Args:
        curve(ProfileCurve): Curve to validate
        tolerances(Optional[ValidationTolerances]): Pass/fail thresholds

    Returns:
        ValidationReport: Largest residuals, with the names of failing checks in `failures`
    """
    tolerances = tolerances if tolerances else ValidationTolerances()
    if not curve.samples:
        raise TooFewSamples("Cannot validate an empty curve")
    params = curve.params
    notes: List[str] = []

    ode = max(abs(sample.f * sample.fp - params.rhs(sample.s, sample.f)) / max(1.0, sample.f) for sample in curve.samples)
    closed = max(curvature_sample(params, sample.s, sample.f).residual for sample in curve.samples)
    K = curve.column("K")
    sign_constant = bool(np.all(K >= 0) or np.all(K <= 0))
    if np.all(K == 0):
        notes.append("K vanishes identically")

    deviation, ricci_fd, arclength, k_error, log_condition = 0.0, 0.0, 0.0, 0.0, None
    evaluator = _closed_form(curve)
    if evaluator is None:
        notes.append("closed form unavailable: resampled checks skipped")
    else:
        deviation = max(abs(sample.f - evaluator.f(sample.s)) / max(1.0, sample.f) for sample in curve.samples)
        residuals, arclength, k_error, count = _resampled_checks(curve, evaluator, tolerances)
        ricci_fd, log_condition = residuals.ricci, residuals.log_condition
        if residuals.ricci_unresolved:
            notes.append("%d of %d finite-difference Ricci points below the rounding level at h=%g skipped" % (residuals.ricci_unresolved, count, tolerances.h))
        if log_condition is None:
            notes.append("log condition skipped: K is not negative throughout")
        elif residuals.log_unresolved:
            notes.append("%d of %d log condition points below the rounding level at h=%g skipped" % (residuals.log_unresolved, count, tolerances.h))

    failures = []
    for name, value, limit in (
        ("max_ode_residual", ode, tolerances.ode),
        ("max_profile_deviation", deviation, tolerances.profile),
        ("max_ricci_residual_closed", closed, tolerances.ricci_closed),
        ("max_ricci_residual_fd", ricci_fd, tolerances.ricci_fd),
        ("max_arclength_violation", arclength, tolerances.arclength),
        ("max_K_fd_error", k_error, tolerances.k_fd),
        ("max_log_condition_residual", log_condition, tolerances.log_condition),
    ):
        if value is not None and not value <= limit:
            failures.append(name)
    if not sign_constant:
        failures.append("sign_constant")

    report = ValidationReport(
        max_ode_residual=ode,
        max_profile_deviation=deviation,
        max_ricci_residual_closed=closed,
        max_ricci_residual_fd=ricci_fd,
        max_arclength_violation=arclength,
        max_K_fd_error=k_error,
        max_log_condition_residual=log_condition,
        sign_constant=sign_constant,
        notes=notes,
        failures=failures,
    )
    logging.info("Validated %d samples: %s", len(curve), "passed" if report.passed else "failed %s" % ",".join(failures))
    return report


def _uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(rng.uniform(lo, hi))


def _signed(rng: np.random.Generator, lo: float, hi: float) -> float:
    return _uniform(rng, lo, hi) * (1.0 if rng.random() < 0.5 else -1.0)


def _either(rng: np.random.Generator, first: Tuple[float, float], second: Tuple[float, float]) -> float:
    return _uniform(rng, *first) if rng.random() < 0.5 else _uniform(rng, *second)


def _draw(rng: np.random.Generator, family: ParamFamily) -> RicciParams:
    c = _uniform(rng, -1.0, 1.0)
    if family == ParamFamily.A0_NEGATIVE:
        b = _uniform(rng, 0.2, 1.5)
        return RicciParams(a=0.0, b=b, c=c, d=(c * c + _uniform(rng, 0.1, 2.0)) / b)
    if family == ParamFamily.A0_POSITIVE:
        branch = Branch.PLUS if rng.random() < 0.5 else Branch.MINUS
        if rng.random() < 0.5:
            b = _uniform(rng, -1.5, -0.2)
            return RicciParams(a=0.0, b=b, c=c, d=c * c / b + _uniform(rng, 0.1, 2.0), branch=branch)
        b = _uniform(rng, 0.2, 0.8)
        return RicciParams(a=0.0, b=b, c=c, d=(c * c - _uniform(rng, 0.1, 2.0)) / b, branch=branch)
    if family == ParamFamily.B0_PLUS:
        if rng.random() < 0.5:
            a, c = _uniform(rng, 0.2, 2.5), -_uniform(rng, 0.2, 1.5)
        else:
            a, c = _either(rng, (0.1, 0.8), (-2.0, -0.1)), _uniform(rng, 0.2, 1.5)
        return RicciParams(a=a, b=0.0, c=c, d=_uniform(rng, -2.0, 2.0), branch=Branch.PLUS)
    if family == ParamFamily.B0_MINUS:
        if rng.random() < 0.5:
            a, c = -_uniform(rng, 0.2, 2.5), _uniform(rng, 0.2, 1.5)
        else:
            a, c = _either(rng, (-0.8, -0.1), (0.1, 2.0)), -_uniform(rng, 0.2, 1.5)
        return RicciParams(a=a, b=0.0, c=c, d=_uniform(rng, -2.0, 2.0), branch=Branch.MINUS)
    return RicciParams(a=_signed(rng, 0.3, 2.0), b=_signed(rng, 0.3, 3.0), c=c, d=_signed(rng, 0.5, 2.0))


def random_params(rng: np.random.Generator, family: ParamFamily) -> RicciParams:
    """
    Draw a parameter set from a family that classifies cleanly.

    Draws that land on a degenerate value (like a = 0 for the b = 0 families) or that have no
    profile are rejected and redrawn.
    """
    for _ in range(MAX_DRAWS):
        params = _draw(rng, family)
        if params.b == 0 and params.a == 0:
            continue
        try:
            classify(params)
            return params
        except (DomainError, InadmissibleError) as e:
            logging.debug("Redrawing %s after %s", family.value, e.message)
    raise BadParameters("Could not draw a usable %s parameter set" % family.value)


def interval_agreement(params: RicciParams, config: Optional[SolverConfig] = None) -> List[str]:
    """
    Compare IVP stopping points with the classified interval.

    The IVP is seeded at the base point of a general-case profile when it lies in the sampling
    window, and at the middle of the window otherwise.  Every accepted step must lie inside the
    interval, and each finite end must be approached within 1e-3 unless the IVP stopped for span
    or step count first.

    Returns:
        List[str]: Descriptions of disagreements, empty when the two agree
    """
    config = config if config else SolverConfig()
    interval = classify(params).interval
    lo, hi = sampling_window(interval, config, params)
    evaluator = profile_function(params, ORACLE_TOLERANCE)
    seed, radius = 0.5 * (lo + hi), None
    if evaluator.component is not None:
        base = eval_general_case(params, evaluator.component.t0, evaluator.component.t0)
        if lo <= base.s <= hi:
            seed, radius = base.s, base.f
    curve = solve_ivp(params, seed, radius if radius is not None else evaluator.f(seed), config=config)
    problems = []
    outside = [sample.s for sample in curve.samples if not interval.contains(sample.s, slack=1e-9)]
    if outside:
        problems.append("%d IVP samples lie outside (%s, %s), first at s=%s" % (len(outside), interval.lo, interval.hi, outside[0]))
    for end, stop, reached in ((interval.lo, curve.stop_lo, curve.samples[0].s), (interval.hi, curve.stop_hi, curve.samples[-1].s)):
        if math.isfinite(end) and stop in (StopReason.TANGENT, StopReason.AXIS) and abs(reached - end) > ENDPOINT_APPROACH:
            problems.append("IVP stopped at s=%s (%s), %g away from the end %s" % (reached, stop.value, abs(reached - end), end))
    return problems
