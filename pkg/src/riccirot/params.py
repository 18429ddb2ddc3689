# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:

"""
Admissibility of ODE constants and the geometry of the region where the IVP is well posed.
"""

# The region is Omega = {(s, x): x > 0, (a x + b s + c)^2 < x^2}.  It is empty exactly when
# (a, b, c) lies in one of three excluded sets:
#
#   E1 = {(a, 0, 0): |a| >= 1}
#   E2 = {(a, 0, c): a >= 1, c > 0}
#   E3 = {(a, 0, c): a <= -1, c < 0}
#
# Membership is decided from these definitions with exact comparisons.  Grid scans are only
# ever used as an outside check, never to decide admissibility.

import logging
from typing import Optional, Sequence

import numpy as np

from .interface import InadmissibleError, OmegaRegion, RicciParams


def excluded_subset(a: float, b: float, c: float) -> Optional[str]:
    """Return the name of the excluded set containing (a, b, c), or None if the triple is admissible."""
    if b != 0:
        return None
    if c == 0 and abs(a) >= 1:
        return "E1"
    if a >= 1 and c > 0:
        return "E2"
    if a <= -1 and c < 0:
        return "E3"
    return None


def check_admissible(a: float, b: float, c: float) -> bool:
    """Whether Omega is nonempty for (a, b, c)."""
    return excluded_subset(a, b, c) is None


def require_admissible(params: RicciParams) -> None:
    """Raise InadmissibleError if the parameters lie in the excluded set."""
    subset = excluded_subset(params.a, params.b, params.c)
    if subset:
        raise InadmissibleError("inadmissible: (a,b,c) = (%g,%g,%g) lies in %s" % (params.a, params.b, params.c, subset), subset)


def omega_region(params: RicciParams) -> OmegaRegion:
    """Describe the region Omega for a parameter set."""
    a, b, c = params.a, params.b, params.c
    line_minus = (a - 1.0, b, c)
    line_plus = (a + 1.0, b, c)
    nonempty = check_admissible(a, b, c)
    degenerate = a * a == 1 and b != 0 and c == 0
    if degenerate:
        logging.debug("Degenerate triple (%g, %g, %g): both lines pass through the barrier at the origin", a, b, c)

    if b != 0:
        if a * a >= 1:
            # The two lines are both tilted the same way, so every feasible point is on one side
            return OmegaRegion(
                line_minus=line_minus,
                line_plus=line_plus,
                barrier_s=-c / b,
                feasible_below=a * b > 0,
                nonempty=nonempty,
                degenerate=degenerate,
            )
        return OmegaRegion(line_minus=line_minus, line_plus=line_plus, nonempty=nonempty, degenerate=degenerate)

    if not nonempty:
        return OmegaRegion(line_minus=line_minus, line_plus=line_plus, nonempty=False)

    # With b = 0 the region does not depend on s, so it is a strip or half-plane in x
    if a * a == 1:
        barrier_x = -c / (2.0 * a)
        return OmegaRegion(line_minus=line_minus, line_plus=line_plus, barrier_x=barrier_x, x_lower=barrier_x, nonempty=True)
    if a * a < 1:
        if c == 0:
            return OmegaRegion(line_minus=line_minus, line_plus=line_plus, nonempty=True)
        x_lower = c / (1.0 - a) if c > 0 else -c / (1.0 + a)
        return OmegaRegion(line_minus=line_minus, line_plus=line_plus, x_lower=x_lower, nonempty=True)
    roots = sorted([c / (1.0 - a), -c / (1.0 + a)])
    return OmegaRegion(line_minus=line_minus, line_plus=line_plus, x_lower=roots[0], x_upper=roots[1], nonempty=True)


def omega_scan(params: RicciParams, s_values: Sequence[float], x_values: Sequence[float]) -> np.ndarray:
    """
    Evaluate feasibility over a grid.

    Args:
        params(RicciParams): Parameters, only a, b and c are used
        s_values(Sequence[float]): Arc length values, the grid columns
        x_values(Sequence[float]): Radius values, the grid rows

    Returns:
        np.ndarray: Boolean array of shape (len(x_values), len(s_values))
    """
    s = np.asarray(s_values, dtype=float)[np.newaxis, :]
    x = np.asarray(x_values, dtype=float)[:, np.newaxis]
    lhs = (params.a * x + params.b * s + params.c) ** 2
    return np.logical_and(x > 0, lhs < x**2)
