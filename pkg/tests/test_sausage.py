import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsausage.asymptotics import aleph
from wsausage.errors import DomainError
from wsausage.params import ModelParams
from wsausage.sausage import (
    coefficients,
    expected_volume,
    invert_transform,
    truncation_bound,
)
from wsausage.specfun import bessel_i, bessel_k_ratio, sphere_surface


def rel(a, b):
    return abs(a - b) / abs(b)


class TestModelParams:
    def test_nu(self):
        assert ModelParams(2, 1.0, 1.0).nu == 0.0
        assert ModelParams(5, 1.0, 1.0).nu == 1.5

    @pytest.mark.parametrize("args", [(1, 1.0, 1.0), (3, 0.0, 1.0), (3, 1.0, -0.1)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            ModelParams(*args)


class TestCoefficients:
    def test_d2_first_pair(self):
        c = coefficients(ModelParams(2, 1.0, 1.0), 0)
        i0, i1 = float(bessel_i(0, 1.0)), float(bessel_i(1, 1.0))
        assert float(c.xi) == pytest.approx(i0**2 / 2, rel=1e-13)
        assert float(c.zeta) == pytest.approx(i0 * i1 / 2, rel=1e-13)
        assert float(c.xi) == pytest.approx(0.8015, abs=1e-4)
        # I_0(1) I_1(1) / 2 = 0.357764
        assert float(c.zeta) == pytest.approx(0.3578, abs=1e-4)

    @pytest.mark.parametrize("d", [2, 3, 4, 7])
    def test_signs_alternate(self, d):
        p = ModelParams(d, 1.0, 0.8)
        for n in range(1, 11):
            c = coefficients(p, n)
            assert c.xi.sign == c.zeta.sign == (-1) ** n

    def test_d3_against_mpmath(self):
        c = coefficients(ModelParams(3, 1.0, 0.5), 1)
        with mpmath.workdps(40):
            ref = mpmath.mpf(3) / 2 * mpmath.gamma(2) * mpmath.besseli(1.5, 0.5) ** 2
        assert abs(float(c.xi)) == pytest.approx(float(ref), rel=1e-12)

    def test_large_index_no_overflow(self):
        c = coefficients(ModelParams(6, 1.0, 3.0), 300)
        assert c.xi.sign == 1 and math.isfinite(c.xi.logmag) and float(c.xi) == 0.0

    def test_requires_drift(self):
        with pytest.raises(DomainError):
            coefficients(ModelParams(3, 1.0, 0.0), 0)


def brute_tail(p, x, start, count=200):
    xi = zeta = 0.0
    for n in range(start, start + count):
        c = coefficients(p, n)
        xi += abs(float(c.xi)) * bessel_k_ratio(p.nu + n, x)
        zeta += abs(float(c.zeta))
    return xi, zeta


class TestTruncationBound:
    def test_superexponential_decay(self):
        p = ModelParams(3, 1.0, 1.0)
        b = [truncation_bound(p, 1.0, n) for n in range(1, 25)]
        ratios = [(y.xi_ratio / x.xi_ratio, y.zeta / x.zeta) for x, y in zip(b, b[1:])]
        assert all(a < 0.5 and z < 0.5 for a, z in ratios[3:])
        assert ratios[-1][0] < ratios[5][0]

    @pytest.mark.parametrize("d", [2, 3])
    @pytest.mark.parametrize("x", [0.5, 2.0])
    @pytest.mark.parametrize("start", [3, 6, 10])
    def test_dominates_brute_force_tail(self, d, x, start):
        p = ModelParams(d, 1.0, x)
        bound = truncation_bound(p, x, start)
        xi, zeta = brute_tail(p, x, start)
        assert bound.xi_ratio >= xi and bound.zeta >= zeta

    def test_vanishes_with_drift(self):
        vals = [truncation_bound(ModelParams(3, 1.0, v), 1.0, 1) for v in (1e-1, 1e-2, 1e-3)]
        assert all(b.xi_ratio < a.xi_ratio and b.zeta < a.zeta for a, b in zip(vals, vals[1:]))
        assert vals[-1].xi_ratio < 1e-5 and vals[-1].zeta < 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            truncation_bound(ModelParams(3, 1.0, 1.0), 1.0, 0)


class TestExpectedVolume:
    def test_zero_time(self):
        res = expected_volume(ModelParams(3, 1.0, 0.5), 0.0)
        assert res.value == pytest.approx(4 * math.pi / 3, rel=1e-15)
        assert res.L == 0.0 and res.route == "series"

    def test_route_cross_check(self):
        p = ModelParams(2, 1.0, 0.5)
        a, b = expected_volume(p, 1.0), invert_transform(p, 1.0)
        assert rel(b.value, a.value) <= 1e-4
        assert b.route == "inversion"

    def test_budget_fields(self):
        res = expected_volume(ModelParams(4, 1.0, 1.0), 2.0, tol=1e-6)
        assert 0 <= res.trunc_bound <= 1e-6 * res.value
        assert res.quad_bound >= 0 and res.terms_used >= 1
        assert res.value >= math.pi**2 / 2

    def test_slope_tends_to_aleph(self):
        p = ModelParams(3, 1.0, 1.0)
        slope = (expected_volume(p, 100.0).L - expected_volume(p, 50.0).L) / 50.0
        assert rel(slope, aleph(p).value) <= 0.02

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_monotone_in_time(self, d):
        p = ModelParams(d, 1.0, 0.7)
        vals = [expected_volume(p, t).value for t in (0.0, 0.1, 0.5, 1.0, 3.0, 8.0)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_inversion_monotone_in_time(self):
        p = ModelParams(3, 1.0, 0.5)
        vals = [invert_transform(p, t).value for t in (0.2, 1.0, 4.0, 9.0)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_drift_enlarges_volume(self):
        slow = expected_volume(ModelParams(3, 1.0, 0.25), 5.0).value
        fast = expected_volume(ModelParams(3, 1.0, 1.0), 5.0).value
        assert fast > slow

    @pytest.mark.parametrize("d", [2, 3, 4, 6])
    @pytest.mark.parametrize("v", [0.1, 1.0, 3.0])
    def test_linear_coefficient_positive(self, d, v):
        p = ModelParams(d, 1.0, v)
        total = math.fsum(float(coefficients(p, n).zeta) for n in range(60))
        lin = math.pi * sphere_surface(d - 2) * p.r * v ** (1 - 2 * p.nu) * total
        assert lin > 0

    @settings(max_examples=15, deadline=None)
    @given(
        st.integers(min_value=2, max_value=5),
        st.floats(min_value=0.1, max_value=2.0),
        st.floats(min_value=0.05, max_value=20.0),
    )
    def test_extra_terms_within_bound(self, d, v, t):
        p = ModelParams(d, 1.0, v)
        res = expected_volume(p, t)
        more = expected_volume(p, t, fixed_terms=res.terms_used + 50)
        assert abs(more.value - res.value) <= res.trunc_bound

    def test_small_drift_refused(self):
        with pytest.raises(DomainError):
            expected_volume(ModelParams(3, 1.0, 1e-9), 1.0)
        with pytest.raises(DomainError):
            invert_transform(ModelParams(3, 1.0, 0.0), 1.0)

    def test_domain(self):
        p = ModelParams(3, 1.0, 1.0)
        with pytest.raises(DomainError):
            expected_volume(p, -1.0)
        with pytest.raises(DomainError):
            expected_volume(p, 1.0, tol=0.0)
        with pytest.raises(DomainError):
            invert_transform(p, 0.0)
