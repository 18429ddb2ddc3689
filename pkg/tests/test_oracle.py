# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=redefined-outer-name,wildcard-import,unused-wildcard-import:

import math

import attrs
import numpy as np
import pytest

from riccirot.classify import classify
from riccirot.curvature import gauss_K
from riccirot.geometry import sample_profile, truncated
from riccirot.interface import *
from riccirot.oracle import fd_gauss_K, fd_log_condition, fd_residuals, interval_agreement, random_params, validate_curve
from riccirot.profile import eval_f_case_b0, profile_function, solve_ivp

CATENOID = RicciParams(a=0.0, b=1.0, c=0.0, d=1.0)
FUNNEL = RicciParams(a=1.0, b=0.0, c=-1.0, d=0.0)
CONE = RicciParams(a=0.0, b=0.25, c=0.5, d=1.0)

# b = 0 profiles with |a| > 1, which approach their asymptotic radius -c/a at one infinite end
STEEP_MINUS = RicciParams(a=-2.2248, b=0.0, c=0.8627, d=1.3886, branch=Branch.MINUS)
STEEP_PLUS = RicciParams(a=2.0134, b=0.0, c=-0.5942, d=-0.186, branch=Branch.PLUS)

# general case whose component runs into a root of R, where s grows like |t - root|^-0.1
NEAR_POLE = RicciParams(a=-1.474318811051389, b=0.31542426280537905, c=0.0027144088342523354, d=0.7235574662233243)


def stencil(center, h, n=5):
    return center + h * (np.arange(n) - (n - 1) // 2)


class TestFdGaussK:
    def test_catenoid_neck(self):
        s = stencil(0.0, 1e-3)
        K = fd_gauss_K(s, np.sqrt(s * s + 1.0))
        assert len(K) == 3
        assert K[1] == pytest.approx(-1.0, abs=1e-5)

    def test_cylinder(self):
        s = stencil(1.0, 0.1)
        np.testing.assert_array_equal(fd_gauss_K(s, np.full(5, 2.0)), 0.0)

    def test_too_few(self):
        with pytest.raises(TooFewSamples):
            fd_gauss_K([0.0, 1.0, 2.0, 3.0], [1.0, 1.0, 1.0, 1.0])

    def test_mismatched(self):
        with pytest.raises(TooFewSamples):
            fd_gauss_K(stencil(0.0, 0.1), [1.0, 1.0, 1.0])

    def test_not_uniform(self):
        with pytest.raises(BadParameters, match=r"uniformly spaced"):
            fd_gauss_K([0.0, 1.0, 2.0, 3.0, 5.0], [1.0, 1.0, 1.0, 1.0, 1.0])

    @pytest.mark.parametrize(
        "params,center,radius",
        [
            (CATENOID, 0.0, lambda s: math.sqrt(s * s + 1.0)),
            (FUNNEL, 0.0, lambda s: eval_f_case_b0(1.0, -1.0, 0.0, Branch.PLUS, s, tolerance=1e-16)),
        ],
    )
    def test_second_order(self, params, center, radius):
        errors = []
        for h in (1e-2, 5e-3, 2.5e-3):
            s = stencil(center, h)
            f = np.array([radius(float(x)) for x in s])
            exact = np.array([gauss_K(params, float(x), float(y)) for x, y in zip(s[1:-1], f[1:-1])])
            errors.append(float(np.max(np.abs(fd_gauss_K(s, f) - exact))))
        assert 3.5 <= errors[0] / errors[1] <= 4.5
        assert 3.5 <= errors[1] / errors[2] <= 4.5


class TestFdLogCondition:
    def test_catenoid(self):
        h = 1e-4
        s = stencil(0.3, h)
        K = -1.0 / (s * s + 1.0) ** 2
        residual = fd_log_condition(K, np.sqrt(s * s + 1.0), h)
        assert len(residual) == 3
        assert np.all(np.abs(residual) <= 1e-4)

    def test_not_ricci(self):
        # a constant negative curvature is not a Ricci metric
        h = 1e-3
        s = stencil(0.0, h)
        residual = fd_log_condition(np.full(5, -1.0), np.cosh(s), h)
        np.testing.assert_allclose(residual, -4.0, atol=1e-12)

    def test_cylinder(self):
        with pytest.raises(NonNegativeK):
            fd_log_condition(np.zeros(5), np.ones(5), 0.1)

    def test_too_few(self):
        with pytest.raises(TooFewSamples):
            fd_log_condition([-1.0, -1.0], [1.0, 1.0], 0.1)


class TestValidateCurve:
    def test_catenoid(self):
        report = validate_curve(sample_profile(CATENOID, truncated(-2.0, 2.0), n=41))
        assert report.passed, report.failures
        assert report.sign_constant
        assert report.max_log_condition_residual is not None
        assert report.notes == []

    def test_funnel(self):
        report = validate_curve(sample_profile(FUNNEL, truncated(-5.0, 3.0), n=41))
        assert report.passed, report.failures

    def test_attained_ends(self):
        report = validate_curve(sample_profile(RicciParams(a=0.0, b=2.0, c=0.0, d=1.0), n=41))
        assert report.passed, report.failures

    def test_cone(self):
        report = validate_curve(sample_profile(CONE, n=21))
        assert report.passed, report.failures
        assert "K vanishes identically" in report.notes
        assert report.max_log_condition_residual is None
        assert any(note.startswith("log condition skipped") for note in report.notes)

    def test_ivp_curve(self):
        curve = solve_ivp(RicciParams(a=0.0, b=1.0, c=0.0), 0.0, 1.0, config=SolverConfig(span=4.0))
        report = validate_curve(curve)
        assert report.passed, report.failures
        assert report.max_profile_deviation <= 1e-9

    def test_corrupted_sample(self):
        curve = sample_profile(CATENOID, truncated(-2.0, 2.0), n=41)
        samples = list(curve.samples)
        samples[-2] = attrs.evolve(samples[-2], f=samples[-2].f + 1e-3)
        report = validate_curve(attrs.evolve(curve, samples=samples))
        assert not report.passed
        assert "max_ode_residual" in report.failures
        assert "max_profile_deviation" in report.failures

    def test_tight_tolerances_fail(self):
        report = validate_curve(sample_profile(CATENOID, truncated(-2.0, 2.0), n=21), ValidationTolerances(k_fd=1e-30))
        assert "max_K_fd_error" in report.failures
        assert "max_ricci_residual_fd" not in report.failures

    def test_unresolvable_tolerance_skips_points(self):
        # no stencil can resolve a residual of 1e-30, so every point is reported as skipped
        report = validate_curve(sample_profile(CATENOID, truncated(-2.0, 2.0), n=21), ValidationTolerances(ricci_fd=1e-30))
        assert report.max_ricci_residual_fd == 0.0
        assert "21 of 21 finite-difference Ricci points below the rounding level at h=0.0001 skipped" in report.notes

    def test_coarse_step_fails(self):
        report = validate_curve(sample_profile(CATENOID, truncated(-2.0, 2.0), n=21), ValidationTolerances(h=0.5))
        assert "max_ricci_residual_fd" in report.failures
        assert report.max_ricci_residual_fd > 1e-2

    @pytest.mark.parametrize("params", [STEEP_MINUS, STEEP_PLUS])
    def test_steep_b_zero(self, params):
        report = validate_curve(sample_profile(params, n=101))
        assert report.passed, report.failures

    def test_near_pole(self):
        report = validate_curve(sample_profile(NEAR_POLE, n=101))
        assert report.passed, report.failures

    def test_empty(self):
        with pytest.raises(TooFewSamples):
            validate_curve(ProfileCurve(params=CATENOID, samples=[], s0_anchor=0.0))


class TestFdResiduals:
    def test_catenoid(self):
        residuals = fd_residuals(profile_function(CATENOID), np.linspace(-2.0, 2.0, 21))
        assert residuals.ricci <= 1e-4
        assert residuals.log_condition is not None and residuals.log_condition <= 1e-4
        assert residuals.ricci_unresolved == 0
        assert residuals.log_unresolved == 0

    def test_far_out_catenoid_is_unresolved(self):
        # K = -1/f^4 comes from u^2 - f^2 with both terms near 4e4, so K'' is lost in rounding
        residuals = fd_residuals(profile_function(CATENOID), np.linspace(200.0, 210.0, 5))
        assert residuals.ricci_unresolved == 5
        assert residuals.ricci == 0.0

    def test_cone(self):
        residuals = fd_residuals(profile_function(CONE), np.linspace(0.0, 2.0, 5))
        assert residuals.ricci == 0.0
        assert residuals.log_condition is None

    def test_asymptotic_funnel_end(self):
        # K ~ e^-20 where the funnel hugs f = 1
        residuals = fd_residuals(profile_function(FUNNEL), np.linspace(-20.0, 0.0, 11))
        assert residuals.ricci <= 1e-4
        assert residuals.log_condition is not None and residuals.log_condition <= 1e-4
        assert residuals.ricci_unresolved > 0


@pytest.mark.slow
class TestResidualSuite:
    @pytest.mark.parametrize("family", list(ParamFamily))
    def test_random_draws(self, family):
        rng = np.random.default_rng(7)
        failed = []
        for _ in range(100):
            params = random_params(rng, family)
            report = validate_curve(sample_profile(params, n=1000))
            if not report.passed:
                failed.append((params, report.failures))
        assert failed == []

    def test_interval_agreement(self):
        rng = np.random.default_rng(13)
        families = list(ParamFamily)
        failed = []
        for index in range(200):
            params = random_params(rng, families[index % len(families)])
            problems = interval_agreement(params)
            if problems:
                failed.append((params, problems))
        assert failed == []


class TestRandomParams:
    @pytest.mark.parametrize("family", list(ParamFamily))
    def test_deterministic(self, family):
        first = random_params(np.random.default_rng(7), family)
        second = random_params(np.random.default_rng(7), family)
        assert first == second

    @pytest.mark.parametrize("family", list(ParamFamily))
    def test_draws_classify(self, family):
        rng = np.random.default_rng(11)
        for _ in range(10):
            classify(random_params(rng, family))

    def test_families(self):
        rng = np.random.default_rng(3)
        assert random_params(rng, ParamFamily.A0_NEGATIVE).a == 0.0
        assert random_params(rng, ParamFamily.B0_PLUS).branch == Branch.PLUS
        assert random_params(rng, ParamFamily.B0_MINUS).branch == Branch.MINUS
        general = random_params(rng, ParamFamily.GENERAL)
        assert general.a != 0.0 and general.b != 0.0


class TestIntervalAgreement:
    @pytest.mark.parametrize("params", [RicciParams(a=0.0, b=2.0, c=0.0, d=1.0), FUNNEL, CATENOID])
    def test_agrees(self, params):
        assert interval_agreement(params) == []

    @pytest.mark.parametrize("family", [ParamFamily.A0_NEGATIVE, ParamFamily.A0_POSITIVE, ParamFamily.B0_PLUS, ParamFamily.B0_MINUS])
    def test_random_draws(self, family):
        rng = np.random.default_rng(5)
        for _ in range(2):
            params = random_params(rng, family)
            assert interval_agreement(params) == [], params

    def test_general_draws(self):
        rng = np.random.default_rng(5)
        for _ in range(3):
            params = random_params(rng, ParamFamily.GENERAL)
            assert interval_agreement(params) == [], params

    def test_near_pole(self):
        assert interval_agreement(NEAR_POLE) == []
