import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsausage.asymptotics import (
    aleph,
    aleph_limit,
    aleph_phi_form,
    aleph_term_majorant,
    aleph_zero_limit,
    newtonian_capacity,
)
from wsausage.errors import DomainError
from wsausage.params import ModelParams
from wsausage.specfun import bessel_i_log, bessel_k_log


def term(p, n):
    nu, x = p.nu, p.rv
    return (nu + n) * math.exp(
        math.lgamma(2 * nu + n) - math.lgamma(n + 1) + bessel_i_log(nu + n, x) - bessel_k_log(nu + n, x)
    )


class TestAleph:
    @pytest.mark.parametrize("d", [2, 3, 4])
    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    def test_dual_forms(self, d, x):
        p = ModelParams(d, 1.0, x)
        a, b = aleph(p), aleph_phi_form(p)
        assert abs(a.value - b.value) <= 1e-10 * abs(a.value)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=2, max_value=8), st.floats(min_value=0.3, max_value=3.0), st.floats(min_value=0.05, max_value=4.0))
    def test_dual_forms_property(self, d, r, x):
        p = ModelParams(d, r, x / r)
        assert aleph_phi_form(p).value == pytest.approx(aleph(p).value, rel=1e-10)

    def test_dual_forms_large_argument(self):
        # alternating terms reach ~e^{2x}/x times the sum, so rounding sets the attainable agreement
        x = 9.0
        p = ModelParams(2, 1.0, x)
        a, b = aleph(p).value, aleph_phi_form(p).value
        cancellation = max(math.exp(bessel_i_log(n, x) - bessel_k_log(n, x)) for n in range(40)) / a
        assert abs(a - b) / a <= 1e-14 * cancellation

    def test_d2_explicit_series(self):
        # pi I_0/K_0 + 2 pi sum_{n>=1} (-1)^n I_n/K_n
        x = 0.8
        ratio = lambda n: math.exp(bessel_i_log(n, x) - bessel_k_log(n, x))
        ref = math.pi * ratio(0) + 2 * math.pi * math.fsum((-1) ** n * ratio(n) for n in range(1, 40))
        assert aleph(ModelParams(2, 1.0, x)).value == pytest.approx(ref, rel=1e-13)

    def test_reports_bound(self):
        res = aleph(ModelParams(3, 1.0, 1.0), tol=1e-12)
        assert 0 <= res.trunc_bound <= 1e-12 * res.value and res.terms_used > 1

    @pytest.mark.parametrize("d", [3, 4, 6])
    def test_at_least_capacity(self, d):
        for v in (0.1, 0.5, 2.0):
            assert aleph(ModelParams(d, 1.0, v)).value >= newtonian_capacity(d, 1.0)

    def test_requires_drift(self):
        with pytest.raises(DomainError):
            aleph(ModelParams(3, 1.0, 0.0))
        with pytest.raises(DomainError):
            aleph_phi_form(ModelParams(3, 1.0, 0.0))


class TestMajorant:
    @pytest.mark.parametrize("d", [3, 4, 5, 8])
    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0])
    def test_dominates_terms(self, d, x):
        p = ModelParams(d, 1.0, x)
        for n in range(1, 40):
            assert term(p, n) <= aleph_term_majorant(p, n)

    def test_domain(self):
        with pytest.raises(DomainError):
            aleph_term_majorant(ModelParams(3, 1.0, 1.0), 0)


class TestLimits:
    def test_capacity_values(self):
        assert newtonian_capacity(3, 1.0) == pytest.approx(2 * math.pi, rel=1e-15)
        assert newtonian_capacity(4, 1.0) == pytest.approx(2 * math.pi**2, rel=1e-15)
        # 3 * S_4 * 2^3 / 2 with S_4 = 8 pi^2 / 3
        assert newtonian_capacity(5, 2.0) == pytest.approx(32 * math.pi**2, rel=1e-15)

    def test_limit_values(self):
        assert aleph_limit(2, 1.0) == 0.0
        assert aleph_limit(3, 2.0) == newtonian_capacity(3, 2.0)

    def test_capacity_domain(self):
        with pytest.raises(DomainError):
            newtonian_capacity(2, 1.0)
        with pytest.raises(DomainError):
            newtonian_capacity(3, 0.0)

    def test_d2_decreasing(self):
        vals = aleph_zero_limit(2, 1.0, [0.5, 0.2, 0.05])
        assert all(v > 0 for v in vals)
        assert all(b < a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("d", [3, 6])
    def test_residual_shrinks(self, d):
        cap = newtonian_capacity(d, 1.0)
        res = [a - cap for a in aleph_zero_limit(d, 1.0, [0.5, 0.2, 0.05, 0.01, 0.001])]
        assert all(r > 0 for r in res)
        assert all(b < a for a, b in zip(res, res[1:]))
        assert res[-1] < 0.01 * cap

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            aleph_zero_limit(3, 1.0, [0.1, 0.2])
        with pytest.raises(DomainError):
            aleph_zero_limit(3, 1.0, [0.1, 0.0])

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_continuity(self, d):
        # differences over shrinking steps around |v| = 0.7 shrink with the step
        base = aleph(ModelParams(d, 1.0, 0.7)).value
        gaps = [abs(aleph(ModelParams(d, 1.0, 0.7 + h)).value - base) for h in (1e-1, 1e-2, 1e-3, 1e-4)]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
