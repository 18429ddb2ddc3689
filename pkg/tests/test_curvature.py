# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:
# pylint: disable=redefined-outer-name,wildcard-import,unused-wildcard-import:

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riccirot.curvature import (
    curvature_sample,
    gauss_K,
    gauss_K_derivs,
    mean_H,
    normalized_residual,
    principal_curvatures,
    ricci_residual,
    second_derivative_f,
)
from riccirot.interface import *
from riccirot.profile import eval_f_case_a0, eval_f_case_b0

CATENOID = RicciParams(a=0.0, b=1.0, c=0.0, d=1.0)
FUNNEL = RicciParams(a=1.0, b=0.0, c=-1.0, d=0.0)


class TestGaussK:
    @pytest.mark.parametrize(
        "params,s,f,expected",
        [
            (CATENOID, 0.0, 1.0, -1.0),
            (CATENOID, 1.0, math.sqrt(2.0), -0.25),
            (RicciParams(a=0.0, b=0.0, c=0.0, d=4.0), 3.0, 2.0, 0.0),
            (FUNNEL, 2.0, 2.0, -0.0625),
        ],
    )
    def test_values(self, params, s, f, expected):
        assert gauss_K(params, s, f) == pytest.approx(expected, rel=1e-12)

    def test_cone_is_exactly_flat(self):
        # f^2 = (s/2 + 1)^2, a cone, where the numerator cancels up to rounding
        params = RicciParams(a=0.0, b=0.25, c=0.5, d=1.0)
        for s in (-1.5, 0.0, 0.3, 7.0):
            assert gauss_K(params, s, eval_f_case_a0(0.25, 0.5, 1.0, s)) == 0.0

    def test_non_positive_radius(self):
        with pytest.raises(NonPositiveRadius):
            gauss_K(CATENOID, 0.0, 0.0)

    def test_against_finite_differences(self):
        # K = -f''/f along the funnel profile
        h = 1e-3
        for s in (-2.0, 0.0, 3.0):
            f = [eval_f_case_b0(1.0, -1.0, 0.0, Branch.PLUS, s + k * h) for k in (-1, 0, 1)]
            fd = -(f[2] - 2.0 * f[1] + f[0]) / (h * h) / f[1]
            assert gauss_K(FUNNEL, s, f[1]) == pytest.approx(fd, rel=1e-5)


class TestGaussKDerivs:
    @pytest.mark.parametrize(
        "s,f,K,kp,kpp",
        [
            (0.0, 1.0, -1.0, 0.0, 4.0),
            (1.0, math.sqrt(2.0), -0.25, 0.5, None),
        ],
    )
    def test_catenoid(self, s, f, K, kp, kpp):
        result = gauss_K_derivs(CATENOID, s, f, K)
        assert result[0] == pytest.approx(kp, abs=1e-15)
        if kpp is not None:
            assert result[1] == pytest.approx(kpp, abs=1e-15)

    @pytest.mark.parametrize("params", [CATENOID, FUNNEL, RicciParams(a=0.0, b=2.0, c=0.3, d=1.0)])
    def test_against_finite_differences(self, params):
        def K(s):
            if params.b == 0:
                f = eval_f_case_b0(params.a, params.c, params.d, params.branch, s)
            else:
                f = eval_f_case_a0(params.b, params.c, params.d, s)
            return gauss_K(params, s, f), f

        h = 1e-4
        for s in (-0.3, 0.1, 0.4):
            (k_minus, _), (k0, f), (k_plus, _) = K(s - h), K(s), K(s + h)
            kp, kpp = gauss_K_derivs(params, s, f, k0)
            assert kp == pytest.approx((k_plus - k_minus) / (2.0 * h), rel=1e-6, abs=1e-10)
            assert kpp == pytest.approx((k_plus - 2.0 * k0 + k_minus) / (h * h), rel=1e-4, abs=1e-6)


class TestMeanH:
    @pytest.mark.parametrize("s", [-3.0, -0.5, 0.0, 0.5, 3.0])
    def test_catenoid_is_minimal(self, s):
        assert mean_H(CATENOID, s, math.sqrt(s * s + 1.0)) == pytest.approx(0.0, abs=1e-15)

    def test_cylinder(self):
        assert mean_H(RicciParams(a=0.0, b=0.0, c=0.0, d=4.0), 0.0, 2.0) == pytest.approx(-0.25)

    def test_catenoidal(self):
        assert mean_H(RicciParams(a=0.0, b=0.75, c=0.0, d=1.0), 0.0, 1.0) == pytest.approx(-0.125)

    @pytest.mark.parametrize("c,d", [(0.0, 1.0), (0.5, 1.0), (-1.0, 2.5)])
    def test_b_one_is_minimal(self, c, d):
        params = RicciParams(a=0.0, b=1.0, c=c, d=d)
        for s in np.linspace(-10.0, 10.0, 1000):
            f = eval_f_case_a0(1.0, c, d, float(s))
            assert abs(mean_H(params, float(s), f)) <= 1e-10

    def test_horizontal_tangent(self):
        # f^2 = 2s: slope 1/f, which reaches 1 at s = 1/2
        with pytest.raises(HorizontalTangent):
            mean_H(RicciParams(a=0.0, b=0.0, c=1.0, d=0.0), 0.5, 1.0)


class TestPrincipalCurvatures:
    @pytest.mark.parametrize(
        "f,fp,fpp,gp,gpp,expected",
        [
            (2.0, 0.0, 0.0, 1.0, 0.0, (-0.5, 0.0)),
            (1.0, 0.0, 1.0, 1.0, 0.0, (-1.0, 1.0)),
            (1.0, 1.0, 0.0, 0.0, 0.7, (0.0, -0.7)),
            (1.0, -1.0, 0.0, 0.0, 0.7, (0.0, 0.7)),
        ],
    )
    def test_values(self, f, fp, fpp, gp, gpp, expected):
        k1, k2 = principal_curvatures(f, fp, fpp, gp, gpp)
        assert k1 == pytest.approx(expected[0], abs=1e-15)
        assert k2 == pytest.approx(expected[1], abs=1e-15)

    def test_plane_limit_is_flat(self):
        k1, k2 = principal_curvatures(1.0, 1.0, 0.0, 0.0, 0.3)
        assert k1 * k2 == 0.0

    def test_arc_length_violation(self):
        with pytest.raises(ArcLengthViolation):
            principal_curvatures(1.0, 0.5, 0.0, 0.5, 0.0)

    def test_product_is_gauss_curvature(self):
        s = 0.7
        f = math.sqrt(s * s + 1.0)
        fp = s / f
        fpp = second_derivative_f(CATENOID, s, f)
        gp = math.sqrt(1.0 - fp * fp)
        gpp = -fp * fpp / gp
        k1, k2 = principal_curvatures(f, fp, fpp, gp, gpp)
        assert k1 * k2 == pytest.approx(gauss_K(CATENOID, s, f), rel=1e-12)


class TestSecondDerivative:
    def test_catenoid_neck(self):
        assert second_derivative_f(CATENOID, 0.0, 1.0) == 1.0

    def test_explicit_slope(self):
        assert second_derivative_f(CATENOID, 0.0, 1.0, fp=0.5) == pytest.approx((1.0 - 0.25) / 1.0)


class TestRicciResidual:
    def test_flat(self):
        assert ricci_residual(0.0, 0.0, 0.0, 1.0, 0.3) == 0.0
        assert normalized_residual(0.0, 0.0, 0.0, 1.0, 0.3) == 0.0

    def test_catenoid_neck(self):
        assert ricci_residual(-1.0, 0.0, 4.0, 1.0, 0.0) == 0.0

    def test_violation(self):
        assert ricci_residual(-1.0, 0.0, 0.0, 1.0, 0.0) == 4.0
        assert normalized_residual(-1.0, 0.0, 0.0, 1.0, 0.0) == 1.0

    @settings(max_examples=100, deadline=None)
    @given(st.floats(-5.0, 5.0), st.floats(-5.0, 5.0), st.floats(-5.0, 5.0), st.floats(0.1, 5.0), st.floats(-1.0, 1.0))
    def test_normalized_is_bounded(self, K, Kp, Kpp, f, fp):
        assert 0.0 <= normalized_residual(K, Kp, Kpp, f, fp) <= 1.0 + 1e-12


class TestCurvatureSample:
    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.2, 1.0), st.floats(-1.0, 1.0), st.floats(0.1, 2.0), st.floats(-5.0, 5.0))
    def test_catenoidal_profiles_are_ricci(self, b, c, gap, s):
        params = RicciParams(a=0.0, b=b, c=c, d=(c * c + gap) / b)
        sample = curvature_sample(params, s, eval_f_case_a0(params.b, params.c, params.d, s))
        assert sample.K < 0
        assert sample.residual < 1e-9

    @pytest.mark.parametrize("s", [-10.0, -1.0, 0.0, 2.0, 10.0])
    def test_funnel_is_ricci(self, s):
        sample = curvature_sample(FUNNEL, s, eval_f_case_b0(1.0, -1.0, 0.0, Branch.PLUS, s))
        assert sample.K < 0
        assert sample.residual < 1e-9

    def test_catenoid_neck(self):
        sample = curvature_sample(CATENOID, 0.0, 1.0)
        assert sample == CurvatureSample(s=0.0, K=-1.0, Kp=0.0, Kpp=4.0, H=0.0, k1=-1.0, k2=1.0, residual=0.0)

    def test_horizontal_tangent_gives_infinite_H(self):
        sample = curvature_sample(RicciParams(a=0.0, b=0.0, c=1.0, d=0.0), 0.5, 1.0)
        assert sample.H == math.inf
        assert sample.k1 == 0.0
