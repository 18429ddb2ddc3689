# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=redefined-outer-name,wildcard-import,unused-wildcard-import:

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from riccirot.interface import *
from riccirot.profile import (
    b_zero_endpoint_radius,
    b_zero_inverse,
    default_t0,
    eval_f_case_a0,
    eval_f_case_b0,
    eval_general_case,
    general_case_component,
    general_case_poles,
    general_case_v_bounds,
    ProfileEvaluator,
    profile_function,
    r_roots,
    seed_params,
    solve_ivp,
    solve_monotone,
    tau_over_r_antiderivative,
)

GENERAL = RicciParams(a=2.0, b=8.0, c=0.0, d=-1.0, t0=-2.0)

# the component of the default base point ends at a root of R, where s grows like |t - root|^-0.1
NEAR_POLE = RicciParams(a=-1.474318811051389, b=0.31542426280537905, c=0.0027144088342523354, d=0.7235574662233243)


class TestCaseA0:
    @pytest.mark.parametrize(
        "b,c,d,s,expected",
        [
            (1.0, 0.0, 1.0, 0.0, 1.0),
            (1.0, 0.0, 1.0, 1.0, math.sqrt(2.0)),
            (2.0, 0.0, 1.0, 0.8, math.sqrt(2.28)),
            (0.0, 0.0, 4.0, 17.0, 2.0),
            (0.0, 1.0, 0.0, 2.0, 2.0),
        ],
    )
    def test_eval(self, b, c, d, s, expected):
        assert eval_f_case_a0(b, c, d, s) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("b,c,d,s", [(-1.0, 0.0, 1.0, 1.0), (-1.0, 0.0, 1.0, 2.0), (0.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, -1.0)])
    def test_non_positive_radicand(self, b, c, d, s):
        with pytest.raises(NonPositiveRadicand):
            eval_f_case_a0(b, c, d, s)


class TestCaseB0:
    @pytest.mark.parametrize(
        "a,c,d,branch,s,expected",
        [
            (1.0, -1.0, 0.0, Branch.PLUS, 2.0, 2.0),
            (-1.0, 1.0, 0.0, Branch.MINUS, -2.0, 2.0),
        ],
    )
    def test_eval(self, a, c, d, branch, s, expected):
        assert eval_f_case_b0(a, c, d, branch, s) == pytest.approx(expected, abs=1e-12)

    def test_eval_implicit(self):
        # f + log(f - 1) = 1 + e has its root near 3.0168
        target = 1.0 + math.e
        f = eval_f_case_b0(1.0, -1.0, 0.0, Branch.PLUS, target)
        assert f == pytest.approx(3.0168, abs=1e-3)
        assert abs(f + math.log(f - 1.0) - target) < 1e-12

    @pytest.mark.parametrize("s", [-10.0, -5.0, 0.0, 5.0, 40.0, 1e4])
    def test_funnel_is_above_asymptote(self, s):
        f = eval_f_case_b0(1.0, -1.0, 0.0, Branch.PLUS, s)
        assert f > 1.0
        assert abs(f + math.log(f - 1.0) - s) < 1e-9 * max(1.0, abs(s))

    def test_branch_violation(self):
        # a > 0 and c > 0 leave no radius with a f + c < 0
        with pytest.raises(BranchViolation):
            eval_f_case_b0(1.0, 1.0, 0.0, Branch.MINUS, 0.0)

    @pytest.mark.parametrize(
        "a,c,d,branch,s",
        [
            (-2.2248, 0.8627, 1.3886, Branch.MINUS, 6.1576),
            (-2.2248, 0.8627, 1.3886, Branch.MINUS, 40.0),
            (2.0134, -0.5942, -0.186, Branch.PLUS, -9.74),
            (2.0134, -0.5942, -0.186, Branch.PLUS, -60.0),
        ],
    )
    def test_asymptotic_side(self, a, c, d, branch, s):
        # far out the radius rounds to the asymptote -c/a, which is still on the branch
        assert eval_f_case_b0(a, c, d, branch, s) == pytest.approx(-c / a, rel=1e-6)

    @pytest.mark.parametrize("a,c", [(0.0, 1.0), (1.0, 0.0)])
    def test_bad_parameters(self, a, c):
        with pytest.raises(BadParameters):
            eval_f_case_b0(a, c, 0.0, Branch.PLUS, 0.0)

    def test_endpoint_value(self):
        # a = 2, c = -1 on the plus branch reaches slope 1 at s0 = 1/2, where f = 1
        f = eval_f_case_b0(2.0, -1.0, 0.0, Branch.PLUS, 0.5)
        assert f == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.2, 2.5), st.floats(0.2, 1.5), st.floats(-2.0, 2.0), st.floats(1.0001, 1.5))
    def test_inverse(self, a, c, d, scale):
        # plus branch with c < 0: radii above -c/a
        radius = scale * c / a
        s = b_zero_inverse(a, -c, d, Branch.PLUS, radius)
        assert eval_f_case_b0(a, -c, d, Branch.PLUS, s) == pytest.approx(radius, rel=1e-9)

    @pytest.mark.parametrize(
        "a,c,branch,expected",
        [
            (2.0, -1.0, Branch.PLUS, 1.0),
            (0.5, 1.0, Branch.PLUS, 2.0),
            (1.0, -1.0, Branch.PLUS, None),
            (-2.0, 1.0, Branch.MINUS, 1.0),
            (-0.5, -1.0, Branch.MINUS, 2.0),
            (0.5, -1.0, Branch.PLUS, None),
        ],
    )
    def test_endpoint_radius(self, a, c, branch, expected):
        assert b_zero_endpoint_radius(a, c, branch) == expected


class TestGeneralCase:
    def test_r_roots(self):
        assert r_roots(2.0) == [-1.0, 2.0]
        assert r_roots(-0.25) == [0.5]
        assert r_roots(-1.0) == []

    @pytest.mark.parametrize("B,tau", [(2.0, -3.0), (2.0, 0.5), (-0.25, 3.0), (-0.25, -1.0), (-1.0, 0.7), (-1.0, -4.0)])
    def test_antiderivative(self, B, tau):
        h = 1e-5
        derivative = (tau_over_r_antiderivative(B, tau + h) - tau_over_r_antiderivative(B, tau - h)) / (2.0 * h)
        assert derivative == pytest.approx(tau / (tau * tau - tau - B), rel=1e-7)

    def test_at_base_point(self):
        state = eval_general_case(GENERAL, -2.0, -2.0)
        assert state.s == pytest.approx(-1.0, abs=1e-15)
        assert state.f == pytest.approx(4.0, abs=1e-15)
        assert state.fp == pytest.approx(2.0 * (1.0 + 2.0 / -2.0))

    @pytest.mark.parametrize("t", [-1.5, -1.8, -3.0, -4.0])
    def test_against_quadrature(self, t):
        state = eval_general_case(GENERAL, -2.0, t)
        integral, _ = quad(lambda tau: tau / (tau * tau - tau - 2.0), -2.0, t, epsabs=1e-13, epsrel=1e-13)
        expected_s = GENERAL.d * math.exp(-integral)
        assert state.s == pytest.approx(expected_s, rel=1e-10)
        assert state.f == pytest.approx(GENERAL.a * t * (state.s + GENERAL.c / GENERAL.b), rel=1e-10)

    def test_singular_interval(self):
        with pytest.raises(SingularInterval):
            eval_general_case(GENERAL, -2.0, -0.5)

    def test_bad_parameters(self):
        with pytest.raises(BadParameters):
            eval_general_case(RicciParams(a=0.0, b=8.0, c=0.0, d=-1.0), -2.0, -2.0)
        with pytest.raises(BadParameters):
            eval_general_case(RicciParams(a=2.0, b=8.0, c=0.0, d=0.0), -2.0, -2.0)
        with pytest.raises(BadParameters):
            eval_general_case(GENERAL, -2.0, 0.0)

    def test_v_bounds(self):
        assert general_case_v_bounds(2.0, 8.0) == (-0.75, -0.25)
        assert general_case_poles(2.0, 8.0) == [-1.0, 0.5]

    def test_component(self):
        component = general_case_component(GENERAL)
        assert component.t0 == -2.0
        assert (component.v_lo, component.v_hi) == (-0.75, -0.25)
        assert not component.lo_pole and not component.hi_pole

    def test_component_rejects_bad_base_point(self):
        with pytest.raises(NotInOmega):
            general_case_component(RicciParams(a=2.0, b=8.0, c=0.0, d=-1.0, t0=-10.0))
        with pytest.raises(NonPositiveRadius):
            general_case_component(RicciParams(a=2.0, b=8.0, c=0.0, d=-1.0, t0=2.0))

    def test_default_t0(self):
        t0 = default_t0(RicciParams(a=2.0, b=8.0, c=0.0, d=-1.0))
        assert -4.0 <= t0 <= -4.0 / 3.0
        assert 2.0 * -1.0 * t0 > 0


class TestProfileEvaluator:
    def test_catenoid(self):
        evaluator = profile_function(RicciParams(a=0.0, b=1.0, c=0.0, d=1.0))
        assert evaluator(0.0) == 1.0
        assert evaluator.f(1.0) == pytest.approx(math.sqrt(2.0))
        assert evaluator.fp(1.0) == pytest.approx(1.0 / math.sqrt(2.0))
        assert evaluator.component is None

    def test_cone(self):
        evaluator = profile_function(RicciParams(a=0.5, b=0.0, c=0.0, d=1.0))
        assert evaluator.f(0.0) == 2.0
        assert evaluator.f(2.0) == 3.0
        with pytest.raises(NonPositiveRadius):
            evaluator.f(-5.0)

    def test_funnel(self):
        evaluator = profile_function(RicciParams(a=1.0, b=0.0, c=-1.0, d=0.0))
        assert evaluator.f(2.0) == pytest.approx(2.0, abs=1e-12)
        assert evaluator.fp(2.0) == pytest.approx(0.5, abs=1e-12)

    def test_general_base_point(self):
        evaluator = profile_function(GENERAL)
        assert evaluator.f(-1.0) == pytest.approx(4.0, abs=1e-12)

    @pytest.mark.parametrize("t", [-1.4, -1.5, -2.5, -3.9])
    def test_general_inverse(self, t):
        state = eval_general_case(GENERAL, -2.0, t)
        evaluator = profile_function(GENERAL)
        assert evaluator.f(state.s) == pytest.approx(state.f, rel=1e-10)
        assert evaluator.state(state.s).t == pytest.approx(t, rel=1e-8)

    def test_general_attained_ends(self):
        evaluator = profile_function(GENERAL)
        for t in (-4.0, -4.0 / 3.0):
            end = eval_general_case(GENERAL, -2.0, t)
            assert evaluator.f(end.s) == pytest.approx(end.f, rel=1e-10)
            assert abs(evaluator.fp(end.s)) == pytest.approx(1.0, abs=1e-8)

    def test_general_outside_component(self):
        evaluator = profile_function(GENERAL)
        ends = sorted(eval_general_case(GENERAL, -2.0, t).s for t in (-4.0, -4.0 / 3.0))
        with pytest.raises(NoBracket):
            evaluator.f(ends[1] + 1.0)

    @pytest.mark.parametrize("s", [0.8, 3.0, 5.0, 10.0, 20.0, 1e3])
    def test_state_next_to_pole(self, s):
        evaluator = profile_function(NEAR_POLE)
        assert evaluator.component.hi_pole
        state = evaluator.state(s)
        assert state.s == pytest.approx(s, rel=1e-9)
        assert state.f == pytest.approx(NEAR_POLE.a * state.t * (s + NEAR_POLE.c / NEAR_POLE.b), rel=1e-6)

    def test_next_to_pole_matches_ivp(self):
        evaluator = profile_function(NEAR_POLE)
        t0 = evaluator.component.t0
        base = eval_general_case(NEAR_POLE, t0, t0)
        curve = solve_ivp(NEAR_POLE, base.s, base.f, config=SolverConfig(span=20.0))
        window = [sample for sample in curve.samples if 1.0 <= sample.s <= 20.0]
        assert len(window) > 10
        for sample in window:
            assert evaluator.f(sample.s) == pytest.approx(sample.f, rel=1e-7)

    def test_state_rejects_inexact_inversion(self, monkeypatch):
        evaluator = profile_function(GENERAL)
        monkeypatch.setattr(ProfileEvaluator, "_invert", lambda self, component, s: eval_general_case(GENERAL, -2.0, -2.0))
        with pytest.raises(NumericalError, match=r"Inverting s\(t\) for s=0.5"):
            evaluator.state(0.5)

    def test_state_requires_general_case(self):
        with pytest.raises(BadParameters):
            profile_function(RicciParams(a=0.0, b=1.0, c=0.0, d=1.0)).state(0.0)


class TestSolveMonotone:
    def test_unbounded(self):
        assert solve_monotone(lambda x: x - 100.0, -math.inf, math.inf, increasing=True) == pytest.approx(100.0)
        assert solve_monotone(lambda x: 100.0 - x, -math.inf, math.inf, increasing=False) == pytest.approx(100.0)

    def test_open_end(self):
        assert solve_monotone(lambda x: math.log(x) + 30.0, 0.0, math.inf, increasing=True, start=1.0) == pytest.approx(math.exp(-30.0))

    def test_closed_end(self):
        assert solve_monotone(lambda x: 1.0 - x, 0.0, 1.0, increasing=False, hi_closed=True) == 1.0

    def test_no_bracket(self):
        with pytest.raises(NoBracket):
            solve_monotone(lambda x: x + 1.0, 0.0, 1.0, increasing=True)


class TestSeedParams:
    def test_a0(self):
        assert seed_params(0.0, 1.0, 0.0, 0.0, 1.0) == RicciParams(a=0.0, b=1.0, c=0.0, d=1.0)

    def test_a0_left_branch(self):
        # 0 < b < 1 with K > 0: seeds left of -c/b pick the left half-line
        params = seed_params(0.0, 0.5, 1.0, -5.0, 2.0)
        assert params.branch == Branch.MINUS
        assert eval_f_case_a0(params.b, params.c, params.d, -5.0) == pytest.approx(2.0)

    def test_b0(self):
        assert seed_params(1.0, 0.0, -1.0, 2.0, 2.0) == RicciParams(a=1.0, b=0.0, c=-1.0, d=0.0, branch=Branch.PLUS)

    def test_b0_cone(self):
        params = seed_params(0.5, 0.0, 0.0, 0.0, 2.0)
        assert profile_function(params).f(0.0) == pytest.approx(2.0)

    def test_general(self):
        params = seed_params(2.0, 8.0, 0.0, -1.0, 4.0)
        assert params.d == -1.0
        assert params.t0 == -2.0

    def test_not_in_omega(self):
        with pytest.raises(NotInOmega):
            seed_params(0.0, 1.0, 0.0, 5.0, 1.0)

    def test_degenerate(self):
        with pytest.raises(DegenerateError):
            seed_params(0.5, 1.0, 1.0, -1.0, 1.0)


class TestSolveIvp:
    def test_catenoid(self):
        curve = solve_ivp(RicciParams(a=0.0, b=1.0, c=0.0), 0.0, 1.0, config=SolverConfig(span=6.0))
        assert curve.stop_lo == StopReason.SPAN
        assert curve.stop_hi == StopReason.SPAN
        assert curve.s0_anchor == 0.0
        window = [sample for sample in curve.samples if abs(sample.s) <= 5.0]
        assert len(window) > 10
        for sample in window:
            assert sample.f == pytest.approx(math.sqrt(sample.s * sample.s + 1.0), abs=1e-8)
            assert sample.g == pytest.approx(math.asinh(sample.s), abs=1e-8)
        s = [sample.s for sample in curve.samples]
        assert s == sorted(s) and len(set(s)) == len(s)

    def test_cylinder(self):
        curve = solve_ivp(RicciParams(a=0.0, b=0.0, c=0.0), 0.0, 2.0, config=SolverConfig(span=3.0))
        for sample in curve.samples:
            assert sample.f == pytest.approx(2.0, abs=1e-12)
            assert sample.g == pytest.approx(sample.s, abs=1e-10)
            assert sample.K == 0.0

    def test_funnel_matches_closed_form(self):
        curve = solve_ivp(RicciParams(a=1.0, b=0.0, c=-1.0), 2.0, 2.0, config=SolverConfig(span=8.0))
        for sample in curve.samples:
            expected = eval_f_case_b0(1.0, -1.0, 0.0, Branch.PLUS, sample.s)
            assert sample.f == pytest.approx(expected, abs=1e-8 * max(1.0, expected))

    def test_stops_at_tangent(self):
        # a = 0, b = 2: the slope reaches 1 at s = +-sqrt(2)/2
        curve = solve_ivp(RicciParams(a=0.0, b=2.0, c=0.0), 0.0, 1.0)
        assert curve.stop_lo == StopReason.TANGENT
        assert curve.stop_hi == StopReason.TANGENT
        assert curve.samples[0].s == pytest.approx(-math.sqrt(0.5), abs=1e-3)
        assert curve.samples[-1].s == pytest.approx(math.sqrt(0.5), abs=1e-3)

    def test_general_matches_closed_form(self):
        curve = solve_ivp(GENERAL, -1.0, 4.0)
        assert curve.stop_lo == StopReason.TANGENT
        assert curve.stop_hi == StopReason.TANGENT
        evaluator = profile_function(GENERAL)
        for sample in curve.samples:
            expected = evaluator.f(sample.s)
            assert sample.f == pytest.approx(expected, abs=1e-7 * max(1.0, expected))

    def test_not_in_omega(self):
        with pytest.raises(NotInOmega):
            solve_ivp(RicciParams(a=0.0, b=1.0, c=0.0), 2.0, 1.0)

    def test_seed_within_eps_of_tangent(self):
        # slope s/x = 1/(1 + 1e-10) already meets the stopping condition at the seed
        curve = solve_ivp(RicciParams(a=0.0, b=1.0, c=0.0), 1.0, 1.0 + 1e-10)
        assert curve.stop_lo == StopReason.TANGENT
        assert curve.stop_hi == StopReason.TANGENT
        assert [sample.s for sample in curve.samples] == [1.0]

    def test_slope_from_interpolant(self):
        curve = solve_ivp(RicciParams(a=0.0, b=1.0, c=0.0), 0.0, 1.0, config=SolverConfig(span=6.0))
        residuals = [abs(sample.f * sample.fp - sample.s) / max(1.0, sample.f) for sample in curve.samples]
        assert 0.0 < max(residuals) <= 1e-9
