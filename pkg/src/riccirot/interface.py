# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=line-too-long,too-many-instance-attributes:

"""
Classes that are part of the ricci-rot interface.
"""

# A rotational surface is swept by rotating an arc-length parametrised profile curve
# (f(s), 0, g(s)) about the z-axis.  The surface is a Ricci surface exactly when the
# radius function solves the reduction ODE
#
#   f(s) f'(s) = a f(s) + b s + c
#
# for constants (a, b, c).  The integration constant d (plus a sign branch in the
# b = 0 case and a base point t0 in the general case) picks one solution.  Every
# value type below is an immutable attrs class, so results can be shared freely
# across worker threads.

import math
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from attrs import field, frozen
from attrs.validators import ge, gt


class Branch(Enum):
    """Sign of a*f + c along a b = 0 profile."""

    PLUS = "PLUS"
    MINUS = "MINUS"


class EndpointKind(Enum):
    """Provenance of a domain interval endpoint."""

    INFINITE = "INFINITE"
    POLYNOMIAL_ROOT = "POLYNOMIAL_ROOT"
    ASYMPTOTE = "ASYMPTOTE"
    BARRIER = "BARRIER"
    RADICAND_ZERO = "RADICAND_ZERO"
    TRUNCATED = "TRUNCATED"


class CaseTag(Enum):
    """Which classification result applies to a parameter set."""

    FLAT_CYLINDER = "FlatCylinder"
    FLAT_CONE = "FlatCone"
    FLAT_PLANE = "FlatPlane"
    CATENOIDAL_RICCI = "CatenoidalRicci"
    NEGATIVE_A0 = "NegativeA0"
    POSITIVE_A0 = "PositiveA0"
    FUNNEL_RICCI = "FunnelRicci"
    NEGATIVE_B0 = "NegativeB0"
    POSITIVE_B0 = "PositiveB0"
    GENERAL_CASE = "GeneralCase"


class KSign(Enum):
    """Sign of the Gaussian curvature along a profile."""

    NEGATIVE = "Negative"
    ZERO = "Zero"
    POSITIVE = "Positive"


class StopReason(Enum):
    """Why one direction of an IVP integration stopped."""

    TANGENT = "TANGENT"
    AXIS = "AXIS"
    SPAN = "SPAN"
    MAX_STEPS = "MAX_STEPS"


class RhoRoot(Enum):
    """Which root of b^2 rho^2 - b^2 rho + bd - c^2 = 0 a free-boundary solution matched."""

    LOWER = "LOWER"
    UPPER = "UPPER"


class ExportFormat(Enum):
    """Supported export formats."""

    OBJ = "obj"
    CSV = "csv"
    JSON = "json"


class ParamFamily(Enum):
    """Families of randomly drawn parameter sets."""

    A0_NEGATIVE = "A0_NEGATIVE"
    A0_POSITIVE = "A0_POSITIVE"
    B0_PLUS = "B0_PLUS"
    B0_MINUS = "B0_MINUS"
    GENERAL = "GENERAL"


@frozen(kw_only=True)
class RicciParams:
    # noinspection PyUnresolvedReferences
    """
    Constants of the reduction ODE plus the data that selects one solution.

    The meaning of `d` depends on the case: f^2 = b s^2 + 2 c s + d when a = 0;
    a f - c log|a f + c| = a^2 s + d when b = 0; and the scale factor in
    s(t) = d E(t) - c/b otherwise.

    Attributes:
        a(float): Coefficient of f in the reduction ODE
        b(float): Coefficient of s in the reduction ODE
        c(float): Constant term of the reduction ODE
        d(float): Integration constant
        branch(Branch): Sign of a*f + c when b = 0, also picks the component for a = 0, 0 < b < 1 and K > 0
        t0(Optional[float]): Base point of the auxiliary parameter when a != 0 and b != 0
    """

    a: float
    b: float
    c: float
    d: float = 0.0
    branch: Branch = Branch.PLUS
    t0: Optional[float] = None

    @property
    def sigma(self) -> float:
        """Sign of a*f + c implied by the branch."""
        return 1.0 if self.branch == Branch.PLUS else -1.0

    def rhs(self, s: float, f: float) -> float:
        """The right hand side a*f + b*s + c of the reduction ODE."""
        return self.a * f + self.b * s + self.c


@frozen(kw_only=True)
class OmegaRegion:
    # noinspection PyUnresolvedReferences
    """
    Structural description of the region {(s, x): x > 0, (a x + b s + c)^2 < x^2}.

    A point is feasible when it lies strictly between the lines l1 = 0 and l2 = 0, where
    l1(s, x) = (a-1) x + b s + c and l2(s, x) = (a+1) x + b s + c.

    Attributes:
        line_minus(Tuple[float, float, float]): Coefficients ((a-1), b, c) of l1
        line_plus(Tuple[float, float, float]): Coefficients ((a+1), b, c) of l2
        barrier_s(Optional[float]): Vertical barrier -c/b, present when a^2 >= 1 and b != 0
        feasible_below(Optional[bool]): Whether feasible points satisfy s < barrier_s
        barrier_x(Optional[float]): Horizontal barrier -c/(2a), present when a^2 = 1 and b = 0
        x_lower(Optional[float]): Lower bound on x for the b = 0 strip, if any beyond x > 0
        x_upper(Optional[float]): Upper bound on x for the b = 0 strip, if any
        nonempty(bool): Whether the region has any point
        degenerate(bool): Whether the triple is the boundary case a^2 = 1, b != 0, c = 0
    """

    line_minus: Tuple[float, float, float]
    line_plus: Tuple[float, float, float]
    barrier_s: Optional[float] = None
    feasible_below: Optional[bool] = None
    barrier_x: Optional[float] = None
    x_lower: Optional[float] = None
    x_upper: Optional[float] = None
    nonempty: bool
    degenerate: bool = False

    def contains(self, s: float, x: float) -> bool:
        """Whether (s, x) lies in the region."""
        if x <= 0:
            return False
        l1 = self.line_minus[0] * x + self.line_minus[1] * s + self.line_minus[2]
        l2 = self.line_plus[0] * x + self.line_plus[1] * s + self.line_plus[2]
        return l1 * l2 < 0


@frozen(kw_only=True)
class GeneralCaseState:
    """A point of a general-case profile expressed through the auxiliary parameter t."""

    t: float
    s: float
    f: float
    a: float
    B: float
    t0: float

    @property
    def fp(self) -> float:
        """Slope f' = a + b/(a t), written through B = b/a^2 as a (1 + B/t)."""
        if math.isinf(self.t):
            return self.a
        return self.a * (1.0 + self.B / self.t)


@frozen(kw_only=True)
class CurvatureSample:
    """Closed-form curvature quantities at one point of a profile."""

    s: float
    K: float
    Kp: float
    Kpp: float
    H: float
    k1: float
    k2: float
    residual: float


@frozen(kw_only=True)
class DomainInterval:
    # noinspection PyUnresolvedReferences
    """
    A maximal interval of definition of a profile curve, with endpoint provenance.

    Attributes:
        lo(float): Lower endpoint, possibly -inf
        hi(float): Upper endpoint, possibly +inf
        lo_kind(EndpointKind): How the profile ends at lo
        hi_kind(EndpointKind): How the profile ends at hi
        lo_closed(bool): Whether lo itself belongs to the interval
        hi_closed(bool): Whether hi itself belongs to the interval
    """

    lo: float
    hi: float
    lo_kind: EndpointKind
    hi_kind: EndpointKind
    lo_closed: bool = False
    hi_closed: bool = False

    def __attrs_post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("Interval must satisfy lo < hi: (%s, %s)" % (self.lo, self.hi))
        if math.isfinite(self.lo) and self.lo_kind == EndpointKind.INFINITE:
            raise ValueError("Finite endpoint %s cannot have kind INFINITE" % self.lo)
        if math.isfinite(self.hi) and self.hi_kind == EndpointKind.INFINITE:
            raise ValueError("Finite endpoint %s cannot have kind INFINITE" % self.hi)

    @property
    def complete(self) -> bool:
        """Whether this is the whole real line."""
        return (
            self.lo == -math.inf
            and self.hi == math.inf
            and self.lo_kind == EndpointKind.INFINITE
            and self.hi_kind == EndpointKind.INFINITE
        )

    def contains(self, s: float, slack: float = 0.0) -> bool:
        """Whether s lies in the interval, allowing an absolute slack at finite endpoints."""
        above = s > self.lo - slack if not self.lo_closed else s >= self.lo - slack
        below = s < self.hi + slack if not self.hi_closed else s <= self.hi + slack
        return above and below

    def contains_interval(self, other: "DomainInterval", slack: float = 0.0) -> bool:
        """Whether another interval lies inside this one."""
        return self.lo - slack <= other.lo and other.hi <= self.hi + slack


@frozen(kw_only=True)
class ParameterSet:
    # noinspection PyUnresolvedReferences
    """
    Admissible values of the auxiliary parameter t in the general case.

    The slope bound |a + b/(a t)| <= 1 is an interval [v_lo, v_hi] in v = 1/t.  The roots of
    R(t) = t^2 - t - b/a^2 are excluded because the curvature vanishes there.

    Attributes:
        v_lo(float): Lower bound on 1/t
        v_hi(float): Upper bound on 1/t
        intervals(List[Tuple[float, float]]): Closed t-intervals covering the slope bound
        excluded(List[float]): Real roots of R, excluded wherever they fall inside an interval
    """

    v_lo: float
    v_hi: float
    intervals: List[Tuple[float, float]]
    excluded: List[float] = field(factory=list)

    def contains(self, t: float) -> bool:
        """Whether t is admissible."""
        if t == 0 or any(t == r for r in self.excluded):
            return False
        return any(lo <= t <= hi for lo, hi in self.intervals)


@frozen(kw_only=True)
class ClassificationReport:
    # noinspection PyUnresolvedReferences
    """
    Result of classifying a parameter set.

    The interval is the maximal admissible bound for the domain.  The classification results
    only bound the domain from above, so `flags` carries "maximal admissible bound" unless
    completeness was proved.

    Attributes:
        params(RicciParams): The classified parameters
        case(CaseTag): Which classification result applies
        k_sign(KSign): Sign of the Gaussian curvature
        interval(DomainInterval): The maximal interval
        complete(bool): Whether the interval is the whole real line
        catenoid(bool): Whether the surface is a catenoid
        descriptors(Dict[str, float]): Named geometric quantities (radius, angle, asymptote, s0, ...)
        flags(List[str]): Notes such as "marginal" or "degenerate"
    """

    params: RicciParams
    case: CaseTag
    k_sign: KSign
    interval: DomainInterval
    complete: bool = False
    catenoid: bool = False
    descriptors: Dict[str, float] = field(factory=dict)
    flags: List[str] = field(factory=list)


@frozen(kw_only=True)
class ProfileSample:
    """One sample of a profile curve; H is infinite at a horizontal tangent."""

    s: float
    f: float
    fp: float
    g: float
    K: float
    H: float
    residual: float


@frozen(kw_only=True)
class ProfileCurve:
    # noinspection PyUnresolvedReferences
    """
    Ordered samples of a generating curve, parametrised by arc length.

    Attributes:
        params(RicciParams): Parameters the curve was produced from
        samples(List[ProfileSample]): Samples with strictly increasing s
        s0_anchor(float): Arc length where the height g vanishes
        stop_lo(Optional[StopReason]): Why integration stopped toward -s, for IVP curves
        stop_hi(Optional[StopReason]): Why integration stopped toward +s, for IVP curves
    """

    params: RicciParams
    samples: List[ProfileSample]
    s0_anchor: float
    stop_lo: Optional[StopReason] = None
    stop_hi: Optional[StopReason] = None

    def __len__(self) -> int:
        return len(self.samples)

    def column(self, name: str) -> np.ndarray:
        """Return one sample attribute as an array, like column("f")."""
        return np.array([getattr(sample, name) for sample in self.samples], dtype=float)


@frozen(kw_only=True)
class SurfaceMesh:
    # noinspection PyUnresolvedReferences
    """
    Vertex grid over (s, theta), periodic in theta.

    Vertex (i, j) is stored at row i * n_theta + j.

    Attributes:
        vertices(np.ndarray): Array of shape (n_s * n_theta, 3)
        n_s(int): Number of profile samples
        n_theta(int): Number of angular samples
    """

    vertices: np.ndarray = field(eq=False, repr=False)
    n_s: int
    n_theta: int

    def index(self, i: int, j: int) -> int:
        """Zero-based vertex index of grid point (i, j), wrapping in theta."""
        return i * self.n_theta + (j % self.n_theta)

    def quads(self) -> Iterator[Tuple[int, int, int, int]]:
        """Zero-based quadrilateral faces, including the seam faces."""
        for i in range(self.n_s - 1):
            for j in range(self.n_theta):
                yield self.index(i, j), self.index(i, j + 1), self.index(i + 1, j + 1), self.index(i + 1, j)

    def triangles(self) -> Iterator[Tuple[int, int, int]]:
        """Zero-based triangles, two per quad."""
        for p, q, r, u in self.quads():
            yield p, q, r
            yield p, r, u


@frozen(kw_only=True)
class FreeBoundarySolution:
    # noinspection PyUnresolvedReferences
    """
    A member of the free-boundary family inside the unit ball.

    The profile is f(t) = sqrt(b) sqrt(t^2 + rho (1 - rho)) over t in [-rho, rho].  The
    b = 0 member is the vertical geodesic, represented by a degenerate marker.

    Attributes:
        b(float): Family parameter in [0, 1]
        rho(float): Half-length of the profile, in (0, 1), or 1 for the marker
        neck_radius(float): Waist radius sqrt(b) sqrt(rho (1 - rho))
        residual_boundary(float): |b rho + g(rho)^2 - 1|
        residual_conormal_f(float): |f'(rho) - f(rho)|
        residual_conormal_g(float): |g'(rho) - g(rho)|
        root(Optional[RhoRoot]): Which quadratic root rho matched
        degenerate(bool): Whether this is the geodesic marker
    """

    b: float
    rho: float
    neck_radius: float
    residual_boundary: float = 0.0
    residual_conormal_f: float = 0.0
    residual_conormal_g: float = 0.0
    root: Optional[RhoRoot] = None
    degenerate: bool = False

    @property
    def params(self) -> RicciParams:
        """The catenoidal parameters (0, b, 0, b rho (1 - rho)) in the shifted arc length."""
        return RicciParams(a=0.0, b=self.b, c=0.0, d=self.b * self.rho * (1.0 - self.rho))


@frozen(kw_only=True)
class GaussBonnetAudit:
    """Total curvature against boundary length; they should sum to zero."""

    area_integral: float
    boundary_length: float

    @property
    def defect(self) -> float:
        """Relative defect |area + length| / length."""
        return abs(self.area_integral + self.boundary_length) / self.boundary_length


@frozen(kw_only=True)
class ValidationReport:
    # noinspection PyUnresolvedReferences
    """
    Result of validating a profile curve with independent checks.

    Attributes:
        max_ode_residual(float): Largest |f f' - (a f + b s + c)| over stored samples
        max_profile_deviation(float): Largest |f - f(s)| against a fresh evaluation
        max_ricci_residual_closed(float): Largest normalized residual from closed-form derivatives
        max_ricci_residual_fd(float): Largest normalized residual from finite differences of K
        max_arclength_violation(float): Largest |f'^2 + g'^2 - 1| from local stencils
        max_K_fd_error(float): Largest relative gap between -f''/f and the stored K
        max_log_condition_residual(Optional[float]): Largest residual of 4K = lap log(-K), when K < 0
        sign_constant(bool): Whether K keeps one sign (or vanishes identically)
        notes(List[str]): Informational notes
        failures(List[str]): Names of the fields that exceeded their tolerance
    """

    max_ode_residual: float = field(validator=ge(0))
    max_profile_deviation: float = field(default=0.0, validator=ge(0))
    max_ricci_residual_closed: float = field(validator=ge(0))
    max_ricci_residual_fd: float = field(validator=ge(0))
    max_arclength_violation: float = field(validator=ge(0))
    max_K_fd_error: float = field(validator=ge(0))
    max_log_condition_residual: Optional[float] = None
    sign_constant: bool
    notes: List[str] = field(factory=list)
    failures: List[str] = field(factory=list)

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        return not self.failures


@frozen(kw_only=True)
class SolverConfig:
    # noinspection PyUnresolvedReferences
    """
    Numerical settings shared by the solvers.

    Attributes:
        rtol(float): Relative tolerance of the IVP integrator
        atol(float): Absolute tolerance of the IVP integrator
        eps_boundary(float): IVP stops once (a x + b s + c)^2 >= (1 - eps) x^2 or x <= eps
        span(float): IVP stops once |s - s0| exceeds this distance
        max_steps(int): Maximum accepted IVP steps per direction
        quad_tolerance(float): Absolute tolerance of the height quadrature
        bracket_tolerance(float): Relative tolerance of scalar root finding
        window_span(float): Distance used to replace an infinite interval end when sampling
        open_margin(float): Fraction of the window trimmed at an open finite end when sampling
    """

    rtol: float = field(default=1e-12, validator=gt(0))
    atol: float = field(default=1e-12, validator=gt(0))
    eps_boundary: float = field(default=1e-8, validator=gt(0))
    span: float = field(default=20.0, validator=gt(0))
    max_steps: int = field(default=1_000_000, validator=gt(0))
    quad_tolerance: float = field(default=1e-10, validator=gt(0))
    bracket_tolerance: float = field(default=1e-13, validator=gt(0))
    window_span: float = field(default=10.0, validator=gt(0))
    open_margin: float = field(default=0.02, validator=gt(0))


@frozen(kw_only=True)
class ValidationTolerances:
    # noinspection PyUnresolvedReferences
    """
    Pass/fail thresholds used when validating a profile curve.

    Attributes:
        ode(float): Threshold for the reduction ODE residual, scaled by max(1, f)
        profile(float): Threshold for stored-vs-evaluated radius, scaled by max(1, f)
        ricci_closed(float): Threshold for the closed-form normalized Ricci residual
        ricci_fd(float): Threshold for the finite-difference normalized Ricci residual
        arclength(float): Threshold for the arc-length identity
        k_fd(float): Threshold for the finite-difference curvature error
        log_condition(float): Threshold for the normalized log-condition residual
        h(float): Stencil step for Ricci and arc-length checks
        h_k(float): Stencil step for the curvature check
    """

    ode: float = field(default=1e-9, validator=gt(0))
    profile: float = field(default=1e-9, validator=gt(0))
    ricci_closed: float = field(default=1e-9, validator=gt(0))
    ricci_fd: float = field(default=1e-4, validator=gt(0))
    arclength: float = field(default=1e-6, validator=gt(0))
    k_fd: float = field(default=1e-4, validator=gt(0))
    log_condition: float = field(default=1e-4, validator=gt(0))
    h: float = field(default=1e-4, validator=gt(0))
    h_k: float = field(default=1e-3, validator=gt(0))


@frozen(kw_only=True)
class JobConfig:
    # noinspection PyUnresolvedReferences
    """
    Configuration for a command line job, optionally loaded from a YAML file.

    Keys in the file are camelCase (like `nTheta`).  Unknown keys are rejected.  Flags given on
    the command line override values from the file.

    Attributes:
        solver(SolverConfig): Numerical settings
        tolerances(ValidationTolerances): Validation thresholds
        n(int): Number of profile samples
        n_theta(int): Number of angular samples for meshes
        seed(int): Seed for randomized sweeps
        threads(Optional[int]): Worker pool size, or None for the default
        output_dir(Optional[str]): Directory for output files, or None for the current directory
    """

    solver: SolverConfig = field(factory=SolverConfig)
    tolerances: ValidationTolerances = field(factory=ValidationTolerances)
    n: int = field(default=101, validator=ge(2))
    n_theta: int = field(default=48, validator=ge(3))
    seed: int = 0
    threads: Optional[int] = None
    output_dir: Optional[str] = None


@frozen
class RicciError(Exception):
    """An error raised by ricci-rot."""

    message: str


@frozen
class InadmissibleError(RicciError):
    """The triple (a, b, c) lies in the excluded set, so no surface exists."""

    subset: Optional[str] = None


@frozen
class DomainError(RicciError):
    """A point or parameter lies outside the domain where a quantity is defined."""


@frozen
class NonPositiveRadicand(DomainError):
    """The radicand b s^2 + 2 c s + d is not positive."""


@frozen
class NoBracket(DomainError):
    """No root of an implicit equation could be bracketed."""


@frozen
class BranchViolation(DomainError):
    """A solution has a*f + c with the wrong sign for its branch."""


@frozen
class SingularInterval(DomainError):
    """A root of t^2 - t - b/a^2 lies on the integration path."""


@frozen
class NonPositiveRadius(DomainError):
    """A computed radius is not positive."""


@frozen
class NotInOmega(DomainError):
    """A seed point lies outside the region where the IVP is well posed."""


@frozen
class HorizontalTangent(DomainError):
    """The profile has a horizontal tangent, so the mean curvature is undefined."""


@frozen
class ArcLengthViolation(DomainError):
    """Inputs violate f'^2 + g'^2 = 1."""


@frozen
class DegenerateError(DomainError):
    """Parameters are degenerate for the requested operation."""


@frozen
class OutsideDomain(DomainError):
    """A requested range leaves the interval of definition."""


@frozen
class BadParameters(DomainError):
    """Parameters are outside the documented range."""


@frozen
class NonNegativeK(DomainError):
    """An operation that requires K < 0 received a non-negative curvature."""


@frozen
class TooFewSamples(DomainError):
    """Too few samples were provided for a finite-difference stencil."""


@frozen
class NumericalError(RicciError):
    """A numerical procedure failed."""


@frozen
class NoRoot(NumericalError):
    """A scalar equation has no sign change on its bracket."""


@frozen
class QuadratureError(NumericalError):
    """Adaptive quadrature failed to converge."""


@frozen
class UnsupportedFormatError(RicciError):
    """An export format is not supported for the given object."""


@frozen
class ConfigError(RicciError):
    """A configuration file could not be loaded."""
