# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:

"""
Closed-form curvature quantities of rotational Ricci surfaces and the Ricci residual.
"""

# Along a profile with f f' = a f + b s + c, write u = b s + c.  Then
#
#   K   = (u^2 + a f u - b f^2) / f^4
#   K'  = -(3 a f + 4 u) / f^2 * K
#   K'' = (24 u^2 + 35 a u f + 4 (3 a^2 - b) f^2) / f^4 * K
#
# and the rotational form of the Ricci condition is K K'' - K'^2 - 4 K^3 + (f'/f) K K' = 0.

import math
from typing import Optional, Tuple

from .interface import ArcLengthViolation, CurvatureSample, HorizontalTangent, NonPositiveRadius, RicciParams

# Relative size below which the numerator of K is treated as rounding noise
CANCELLATION = 64 * 2.220446049250313e-16

# H is only computed where (a f + b s + c)^2 <= (1 - HORIZONTAL_TOLERANCE) f^2
HORIZONTAL_TOLERANCE = 1e-12

ARCLENGTH_TOLERANCE = 1e-10


def _require_radius(f: float) -> None:
    if not f > 0:
        raise NonPositiveRadius("Radius must be positive, got %s" % f)


def gauss_K(params: RicciParams, s: float, f: float) -> float:
    """Closed-form Gaussian curvature at arc length s with radius f."""
    _require_radius(f)
    u = params.b * s + params.c
    terms = (u * u, params.a * f * u, params.b * f * f)
    numerator = terms[0] + terms[1] - terms[2]
    if abs(numerator) <= CANCELLATION * sum(abs(term) for term in terms):
        return 0.0  # flat profiles cancel exactly in exact arithmetic
    return numerator / f**4


def gauss_K_derivs(params: RicciParams, s: float, f: float, K: float) -> Tuple[float, float]:
    """Closed-form K' and K'' given the curvature K at the same point."""
    _require_radius(f)
    a, b = params.a, params.b
    u = b * s + params.c
    kp = -(3.0 * a * f + 4.0 * u) / f**2 * K
    kpp = (24.0 * u * u + 35.0 * a * u * f + 4.0 * (3.0 * a * a - b) * f * f) / f**4 * K
    return kp, kpp


def mean_H(params: RicciParams, s: float, f: float) -> float:
    """Closed-form mean curvature, undefined at a horizontal tangent."""
    _require_radius(f)
    w = params.rhs(s, f)
    disc = f * f - w * w
    if disc <= HORIZONTAL_TOLERANCE * f * f:
        raise HorizontalTangent("Horizontal tangent at s=%s: mean curvature is unbounded" % s)
    return ((params.b - 1.0) * f + params.a * w) / (2.0 * f * math.sqrt(disc))


def second_derivative_f(params: RicciParams, s: float, f: float, fp: Optional[float] = None) -> float:
    """The second derivative f'' = (a f' + b - f'^2) / f implied by the reduction ODE."""
    _require_radius(f)
    if fp is None:
        fp = params.rhs(s, f) / f
    return (params.a * fp + params.b - fp * fp) / f


def principal_curvatures(f: float, fp: float, fpp: float, gp: float, gpp: float) -> Tuple[float, float]:
    """
    Principal curvatures of the rotational surface along meridians and parallels.

    Args:
        f(float): Radius
        fp(float): First derivative of the radius
        fpp(float): Second derivative of the radius
        gp(float): First derivative of the height
        gpp(float): Second derivative of the height

    Returns:
        Tuple[float, float]: k1 = -g'/f and k2 = g' f'' - g'' f'

    Raises:
        ArcLengthViolation: If f'^2 + g'^2 differs from 1 by more than 1e-10
    """
    _require_radius(f)
    violation = abs(fp * fp + gp * gp - 1.0)
    if violation > ARCLENGTH_TOLERANCE:
        raise ArcLengthViolation("Profile is not parametrised by arc length: |f'^2 + g'^2 - 1| = %g" % violation)
    return -gp / f, gp * fpp - gpp * fp


def ricci_residual(K: float, Kp: float, Kpp: float, f: float, fp: float) -> float:
    """Raw residual K K'' - K'^2 - 4 K^3 + (f'/f) K K' of the rotational Ricci condition."""
    return K * Kpp - Kp * Kp - 4.0 * K**3 + (fp / f) * K * Kp


def normalized_residual(K: float, Kp: float, Kpp: float, f: float, fp: float) -> float:
    """The Ricci residual divided by the sum of the magnitudes of its terms, so it lies in [0, 1]."""
    raw = ricci_residual(K, Kp, Kpp, f, fp)
    if raw == 0:
        return 0.0
    scale = abs(K * Kpp) + Kp * Kp + 4.0 * abs(K) ** 3 + abs((fp / f) * K * Kp)
    return abs(raw) / scale


def curvature_sample(params: RicciParams, s: float, f: float) -> CurvatureSample:
    """All closed-form curvature quantities at one point; H is infinite at a horizontal tangent."""
    K = gauss_K(params, s, f)
    kp, kpp = gauss_K_derivs(params, s, f, K)
    fp = params.rhs(s, f) / f
    fpp = second_derivative_f(params, s, f, fp)
    gp = math.sqrt(max(0.0, 1.0 - fp * fp))
    try:
        H = mean_H(params, s, f)
    except HorizontalTangent:
        H = math.inf
    k1 = -gp / f
    if gp > 0:
        k2 = fpp / gp
    else:
        k2 = 0.0 if fpp == 0 else math.copysign(math.inf, fpp)
    return CurvatureSample(s=s, K=K, Kp=kp, Kpp=kpp, H=H, k1=k1, k2=k2, residual=normalized_residual(K, kp, kpp, f, fp))
