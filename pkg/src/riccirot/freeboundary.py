# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:

"""
The one-parameter family of free-boundary catenoidal surfaces in the unit ball.
"""

# For b in (0, 1] and eps = rho (1 - rho), the profile over t in [-rho, rho] is
#
#   f(t) = sqrt(b) sqrt(t^2 + eps)
#   g(t) = int_0^t sqrt(((1 - b) tau^2 + eps) / (tau^2 + eps)) dtau
#
# Orthogonality at the boundary (X_t = X at t = rho) holds for every rho because
# f'(rho) = f(rho) = sqrt(b rho), so the only condition left is that the boundary circles lie
# on the unit sphere: Phi(rho) = b rho + g(rho)^2 - 1 = 0.  Phi is negative near 0 and
# positive just below 1, so the root is bracketed on (0, 1).
#
# The integrand tends to sqrt(1 - b) away from the neck, so g is computed as t sqrt(1 - b)
# plus the integral of the difference, which is small and well scaled even when eps is tiny.

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from .curvature import curvature_sample, gauss_K, gauss_K_derivs
from .geometry import build_mesh, clustered_grid, integrate
from .interface import (
    BadParameters,
    FreeBoundarySolution,
    GaussBonnetAudit,
    NoRoot,
    NumericalError,
    ProfileCurve,
    ProfileSample,
    RhoRoot,
    SurfaceMesh,
)
from .pool import map_ordered

INNER_TOLERANCE = 1e-12
RHO_BRACKET = (1e-9, 1.0 - 1e-12)
CATENOID_BRACKET = (0.5, 0.99)
CONORMAL_TOLERANCE = 1e-8


def _require_b(b: float) -> None:
    if not 0 < b <= 1:
        raise BadParameters("The family parameter must satisfy 0 < b <= 1, got %s" % b)


def f_hat(b: float, rho: float, t: float) -> float:
    """Radius sqrt(b) sqrt(t^2 + rho (1 - rho))."""
    return math.sqrt(b) * math.sqrt(t * t + rho * (1.0 - rho))


def f_hat_prime(b: float, rho: float, t: float) -> float:
    """Slope of the radius."""
    return math.sqrt(b) * t / math.sqrt(t * t + rho * (1.0 - rho))


def g_hat_prime(b: float, rho: float, t: float) -> float:
    """Slope of the height, sqrt(((1 - b) t^2 + eps) / (t^2 + eps))."""
    eps = rho * (1.0 - rho)
    return math.sqrt(((1.0 - b) * t * t + eps) / (t * t + eps))


def g_hat(b: float, rho: float, t: float, tolerance: float = INNER_TOLERANCE) -> float:
    """
    Height of the free-boundary profile, with g(0) = 0.

    Args:
        b(float): Family parameter in (0, 1]
        rho(float): Half-length of the profile in (0, 1)
        t(float): Arc length from the neck, with |t| <= rho
        tolerance(float): Quadrature tolerance

    Returns:
        float: The height, an odd function of t
    """
    _require_b(b)
    if not 0 < rho < 1:
        raise BadParameters("rho must lie in (0, 1), got %s" % rho)
    if abs(t) > rho * (1.0 + 1e-12):
        raise BadParameters("|t| = %s exceeds rho = %s" % (abs(t), rho))
    if t == 0:
        return 0.0
    eps = rho * (1.0 - rho)
    flat = math.sqrt(1.0 - b)
    span = abs(t)

    def excess(tau: float) -> float:
        # sqrt(A) - sqrt(1 - b) written without cancellation
        q = tau * tau + eps
        return b * eps / (q * (math.sqrt(((1.0 - b) * tau * tau + eps) / q) + flat))

    return math.copysign(span * flat + _from_neck(excess, span, math.sqrt(eps), tolerance), t)


def _from_neck(fn: Callable[[float], float], span: float, knee: float, tolerance: float) -> float:
    """Integrate fn over [0, span], splitting at the neck width where fn changes scale."""
    if knee < span:
        return integrate(fn, 0.0, knee, tolerance) + integrate(fn, knee, span, tolerance)
    return integrate(fn, 0.0, span, tolerance)


def boundary_defect(b: float, rho: float) -> float:
    """Phi(rho) = b rho + g(rho)^2 - 1, which vanishes when the boundary lies on the unit sphere."""
    return b * rho + g_hat(b, rho, rho) ** 2 - 1.0


def solve_rho(b: float) -> FreeBoundarySolution:
    """
    Find the member of the family for a given b.

    Args:
        b(float): Family parameter in (0, 1]

    Returns:
        FreeBoundarySolution: Root rho, neck radius and boundary residuals

    Raises:
        NoRoot: If the boundary condition has no sign change on its bracket
        NumericalError: If the orthogonality residuals exceed their tolerance
    """
    _require_b(b)
    lo, hi = RHO_BRACKET
    phi_lo, phi_hi = boundary_defect(b, lo), boundary_defect(b, hi)
    if phi_lo * phi_hi > 0:
        raise NoRoot("The boundary condition does not change sign on (%g, %g) for b=%g: %g, %g" % (lo, hi, b, phi_lo, phi_hi))
    rho = float(brentq(lambda r: boundary_defect(b, r), lo, hi, xtol=1e-15, rtol=4.0 * float(np.finfo(float).eps)))
    g_rho = g_hat(b, rho, rho)
    solution = FreeBoundarySolution(
        b=b,
        rho=rho,
        neck_radius=math.sqrt(b) * math.sqrt(rho * (1.0 - rho)),
        residual_boundary=abs(b * rho + g_rho * g_rho - 1.0),
        residual_conormal_f=abs(f_hat_prime(b, rho, rho) - f_hat(b, rho, rho)),
        residual_conormal_g=abs(g_hat_prime(b, rho, rho) - g_rho),
        root=RhoRoot.LOWER if rho <= 0.5 else RhoRoot.UPPER,
    )
    if max(solution.residual_conormal_f, solution.residual_conormal_g) > CONORMAL_TOLERANCE:
        raise NumericalError("Boundary is not orthogonal for b=%g: residuals %g, %g" % (b, solution.residual_conormal_f, solution.residual_conormal_g))
    logging.info("Free boundary b=%g: rho=%.12f, neck radius %.12f", b, rho, solution.neck_radius)
    return solution


def critical_catenoid_rho() -> float:
    """Root of (1/sqrt(rho)) sinh(1/sqrt(rho)) = 1/sqrt(1 - rho), the critical catenoid."""

    def equation(rho: float) -> float:
        w = 1.0 / math.sqrt(rho)
        return w * math.sinh(w) - 1.0 / math.sqrt(1.0 - rho)

    return float(brentq(equation, *CATENOID_BRACKET, xtol=1e-15, rtol=4.0 * float(np.finfo(float).eps)))


def geodesic_marker() -> FreeBoundarySolution:
    """The b = 0 member, the vertical geodesic, which is a curve rather than a surface."""
    return FreeBoundarySolution(b=0.0, rho=1.0, neck_radius=0.0, degenerate=True)


def family_sweep(b_values: Sequence[float], threads: Optional[int] = None) -> List[FreeBoundarySolution]:
    """Solve the family at each b, in input order, with a marker for b = 0."""

    def solve(b: float) -> FreeBoundarySolution:
        return geodesic_marker() if b == 0 else solve_rho(b)

    return map_ordered(solve, list(b_values), threads)


def _require_surface(solution: FreeBoundarySolution) -> None:
    if solution.degenerate:
        raise BadParameters("The b = 0 member is a curve, not a surface")


def gauss_bonnet_audit(solution: FreeBoundarySolution, tolerance: float = 1e-12) -> GaussBonnetAudit:
    """Total curvature 2 pi int K f dt against the boundary length 4 pi f(rho)."""
    _require_surface(solution)
    params = solution.params
    b, rho = solution.b, solution.rho

    def density(t: float) -> float:
        f = f_hat(b, rho, t)
        return gauss_K(params, t, f) * f

    # K f is even in t
    area = 4.0 * math.pi * _from_neck(density, rho, math.sqrt(rho * (1.0 - rho)), tolerance)
    length = 4.0 * math.pi * f_hat(b, rho, rho)
    logging.debug("Gauss-Bonnet audit b=%g: %.15g + %.15g", b, area, length)
    return GaussBonnetAudit(area_integral=area, boundary_length=length)


def divergence_audit(solution: FreeBoundarySolution) -> Tuple[float, float]:
    """
    Boundary flux of log(-K) against 4 times the total curvature.

    The outward derivative of log(-K) is K'/K at t = rho and -K'/K at t = -rho, so the flux is
    2 pi f(rho) (K'/K)(rho) - 2 pi f(rho) (K'/K)(-rho).

    Returns:
        Tuple[float, float]: The flux and 4 int K dA, which should agree
    """
    _require_surface(solution)
    params = solution.params
    b, rho = solution.b, solution.rho
    flux = 0.0
    for t, outward in ((rho, 1.0), (-rho, -1.0)):
        f = f_hat(b, rho, t)
        K = gauss_K(params, t, f)
        kp, _ = gauss_K_derivs(params, t, f, K)
        flux += outward * 2.0 * math.pi * f * kp / K
    return flux, 4.0 * gauss_bonnet_audit(solution).area_integral


def boundary_frames(solution: FreeBoundarySolution, n_theta: int = 48) -> Tuple[np.ndarray, np.ndarray]:
    """
    Boundary positions and exterior conormals on both boundary circles.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Arrays of shape (2 n_theta, 3), the circle at t = -rho first
    """
    _require_surface(solution)
    b, rho = solution.b, solution.rho
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    positions, conormals = [], []
    for t, outward in ((-rho, -1.0), (rho, 1.0)):
        f, g = f_hat(b, rho, t), g_hat(b, rho, t)
        fp, gp = f_hat_prime(b, rho, t), g_hat_prime(b, rho, t)
        positions.append(np.column_stack([f * np.cos(theta), f * np.sin(theta), np.full(n_theta, g)]))
        conormals.append(outward * np.column_stack([fp * np.cos(theta), fp * np.sin(theta), np.full(n_theta, gp)]))
    return np.vstack(positions), np.vstack(conormals)


def free_boundary_profile(solution: FreeBoundarySolution, n: int = 101) -> ProfileCurve:
    """Sample the profile over [-rho, rho], including both boundary points exactly."""
    _require_surface(solution)
    params = solution.params
    b, rho = solution.b, solution.rho
    samples = []
    for t in clustered_grid(-rho, rho, n):
        t = float(t)
        f = f_hat(b, rho, t)
        quantities = curvature_sample(params, t, f)
        samples.append(ProfileSample(s=t, f=f, fp=f_hat_prime(b, rho, t), g=g_hat(b, rho, t), K=quantities.K, H=quantities.H, residual=quantities.residual))
    return ProfileCurve(params=params, samples=samples, s0_anchor=0.0)


def free_boundary_mesh(solution: FreeBoundarySolution, n: int = 101, n_theta: int = 48) -> SurfaceMesh:
    """Mesh the surface piece inside the unit ball."""
    return build_mesh(free_boundary_profile(solution, n), n_theta)
