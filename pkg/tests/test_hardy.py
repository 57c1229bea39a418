import math

import numpy as np
import pytest

from glsobolev.errors import DivergenceError, DomainError
from glsobolev.hardy import (bradley_B_sup, custom_weights, hardy_check, j1,
                             j2, power_weights, trace_power_weights)

B_3_3_2_6 = 0.83268317765560431961  # 3^(-1/6)
INDICATOR_LHS = 0.39789325444416130  # (1/252)^(1/6) = Beta(3,7)^(1/6)
LOGPOW2_LHS = 2.5879751911819190    # (Gamma(13)/3^13)^(1/6)
LOGPOW2_RHS_BASE = 2.8284271247461903  # 2 sqrt(2) = grad side without omega


class TestJ1:
    def test_trace_power_value(self):
        w = trace_power_weights(3, 0, 2.0)  # a_u = (m-1)/q = 1/3
        assert math.isclose(j1(1.0, w, 6.0).to_linear(), B_3_3_2_6, rel_tol=1e-14)

    def test_vanishes_at_origin(self):
        w = trace_power_weights(3, 0, 2.0)
        assert j1(1e-12, w, 6.0).to_linear() < 1e-6

    def test_flat_weight(self):
        w = power_weights(0.0, 1.0)
        assert math.isclose(j1(4.0, w, 2.0).to_linear(), 2.0, rel_tol=1e-14)

    def test_divergent_exponent(self):
        with pytest.raises(DivergenceError):
            j1(1.0, power_weights(-1.0, 1.0), 1.0)

    def test_custom_matches_power(self):
        wp = power_weights(1.0 / 3.0, 1.0)
        wc = custom_weights(lambda x: x ** (1.0 / 3.0), lambda x: x)
        got = j1(2.0, wc, 6.0).to_linear()
        assert math.isclose(got, j1(2.0, wp, 6.0).to_linear(), rel_tol=1e-9)


class TestJ2:
    def test_trace_power_values(self):
        w = power_weights(0.0, (3 - 1) / 2.0)  # v = x^((N-1)/p), N=3, p=2
        assert math.isclose(j2(1.0, w, 2.0).to_linear(), 1.0, rel_tol=1e-14)
        assert math.isclose(j2(4.0, w, 2.0).to_linear(), 0.5, rel_tol=1e-14)

    def test_divergent_tail(self):
        with pytest.raises(DivergenceError):
            j2(4.0, power_weights(0.0, 0.0), 2.0)  # v = 1
        with pytest.raises(DivergenceError):
            j2(4.0, custom_weights(lambda x: 1.0, lambda x: 1.0), 2.0)

    def test_custom_matches_power(self):
        wp = power_weights(0.0, 1.0)
        wc = custom_weights(lambda x: 1.0, lambda x: x)
        assert math.isclose(j2(2.5, wc, 2.0).to_linear(),
                            j2(2.5, wp, 2.0).to_linear(), rel_tol=1e-9)


class TestBradleyBSup:
    def test_balanced_closed_form(self):
        w = trace_power_weights(3, 0, 2.0)  # m/q = (N-p)/p = 1/2
        res = bradley_B_sup(w, 2.0, 6.0)
        assert math.isclose(res.to_linear(), B_3_3_2_6, rel_tol=1e-14)

    def test_balanced_J_constant_in_w(self):
        w = trace_power_weights(3, 0, 2.0)
        J = np.array([
            (j1(x, w, 6.0) * j2(x, w, 2.0)).to_linear()
            for x in np.geomspace(1e-6, 1e6, 100)
        ])
        assert J.var() / J.mean() ** 2 <= 1e-10

    def test_unbalanced_reports_infinite(self):
        # m = N = 3, p = 2, q = 5: J ~ w^(3/5 - 1/2) grows without bound
        w = power_weights(2.0 / 5.0, 1.0)
        with pytest.raises(DivergenceError, match="infinite"):
            bradley_B_sup(w, 2.0, 5.0)

    def test_custom_boundary_maximum_reports_infinite(self):
        w = custom_weights(lambda x: x ** (2.0 / 5.0), lambda x: x)
        with pytest.raises(DivergenceError):
            bradley_B_sup(w, 2.0, 5.0)

    def test_custom_matches_closed_form(self):
        wc = custom_weights(lambda x: x ** (1.0 / 3.0), lambda x: x)
        res = bradley_B_sup(wc, 2.0, 6.0)
        assert abs(res.to_linear() - B_3_3_2_6) <= 1e-6 * B_3_3_2_6

    def test_hypothesis_checked(self):
        w = trace_power_weights(3, 0, 2.0)
        with pytest.raises(DomainError):
            bradley_B_sup(w, 2.0, 1.5)  # q < p
        with pytest.raises(DomainError):
            bradley_B_sup(w, 1.0, 6.0)  # p = 1


class TestHardyCheck:
    def test_indicator(self):
        w = trace_power_weights(3, 0, 2.0)
        res = hardy_check(lambda t: 1.0 if 0.0 < t < 1.0 else 0.0, w, 2.0, 6.0,
                          g_support=1.0)
        assert res.passed
        assert math.isclose(res.lhs, INDICATOR_LHS, rel_tol=1e-9)
        assert res.rhs_low <= res.rhs_high

    def test_zero(self):
        w = trace_power_weights(3, 0, 2.0)
        res = hardy_check(lambda t: 0.0, w, 2.0, 6.0, g_support=1.0)
        assert res.passed and res.lhs == 0.0 and res.rhs_high == 0.0

    def test_logpow_derivative_profile(self):
        # g = |f'_2| reproduces the radial trace reduction: both sides have
        # closed forms through the Gamma function.
        w = trace_power_weights(3, 0, 2.0)
        d = 2.0
        g = lambda t: d * (-math.log(t)) ** (d - 1.0) / t if 0.0 < t < 1.0 else 0.0
        res = hardy_check(g, w, 2.0, 6.0, g_support=1.0)
        assert res.passed
        assert math.isclose(res.lhs, LOGPOW2_LHS, rel_tol=1e-9)
        assert math.isclose(res.rhs_low, B_3_3_2_6 * LOGPOW2_RHS_BASE, rel_tol=1e-9)

    def test_bracket_ordering(self):
        # Q(p) >= 1 on 1 < p <= q, so rhs_low <= rhs_high always.
        for (m, n, p) in [(3, 0, 2.0), (2, 1, 2.0), (3, 1, 2.5)]:
            w = trace_power_weights(m, n, p)
            q = m * p / (m + n - p)
            res = hardy_check(lambda t: 1.0 if 0.0 < t < 1.0 else 0.0, w, p, q,
                              g_support=1.0)
            assert res.rhs_low <= res.rhs_high
            assert res.passed


class TestTraceSpecialization:
    @pytest.mark.parametrize("m,n,p", [(2, 1, 2.0), (3, 1, 2.5), (3, 2, 3.0)])
    def test_hardy_ratio_below_trace_bound(self, m, n, p):
        # The Bradley route bounds the radial trace inequality: for the
        # extremal-derivative g, lhs / (gradient side) stays below B Q(p),
        # equivalently lhs*omega(m)^(1/q)/omega(N)^(1/p) <= K+ per Bradley.
        N = m + n
        q = m * p / (N - p)
        d = 2.0
        w = trace_power_weights(m, n, p)
        g = lambda t: d * (-math.log(t)) ** (d - 1.0) / t if 0.0 < t < 1.0 else 0.0
        res = hardy_check(g, w, p, q, g_support=1.0)
        assert res.passed
        assert res.lhs <= res.rhs_high * (1.0 + 1e-9)
