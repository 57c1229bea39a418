import math

import numpy as np
import pytest

from glsobolev.constants import talenti, trace_upper
from glsobolev.errors import (DivergenceError, DomainError,
                              UnsupportedConfigurationError)
from glsobolev.gls import (constant_psi, gls_norm, natural_psi, nu_transform,
                           power_blowup, tabulated_psi, theta_transform,
                           zeta_transform)
from glsobolev.radial import (gaussian_profile, logpow_grad_norm_closed,
                              logpow_norm_closed, logpow_profile, lp_norm_quad)
from glsobolev.specfun import LogValue

OMEGA_3 = 12.566370614359172954


def _curve_from_psi(psi, factor=1.0):
    log_f = math.log(factor)
    return lambda p: LogValue.from_log(psi.log_value(p) + log_f)


class TestPsiFunction:
    def test_domain_is_strict(self):
        psi = constant_psi((1.0, 3.0), 2.0)
        assert psi(2.0) == 2.0
        for bad in (1.0, 3.0, 0.5, 4.0):
            with pytest.raises(DomainError):
                psi.log_value(bad)

    def test_positive_floor_on_dense_grid(self):
        for psi in (
            constant_psi((1.0, 3.0), 0.7),
            power_blowup((1.0, 3.0), 1.5, "upper"),
            natural_psi(logpow_profile(3, 2.0), "gradient", (1.0, 3.0)),
        ):
            grid = np.linspace(1.0 + 1e-4, 3.0 - 1e-4, 256)
            assert min(psi(float(p)) for p in grid) > 0.0

    def test_interval_validation(self):
        with pytest.raises(DomainError):
            constant_psi((0.5, 3.0), 1.0)
        with pytest.raises(DomainError):
            constant_psi((3.0, 3.0), 1.0)

    def test_tabulated(self):
        psi = tabulated_psi([(1.0, 1.0), (2.0, 4.0), (3.0, 2.0)])
        assert math.isclose(psi(2.0), 4.0, rel_tol=1e-12)
        assert 1.0 < psi(1.5) < 4.0
        with pytest.raises(DomainError):
            psi(3.5)


class TestNaturalPsi:
    def test_logpow_gradient_matches_closed_form(self):
        psi = natural_psi(logpow_profile(3, 2.0), "gradient", (1.0, 3.0))
        for p in (1.5, 2.0, 2.5):
            assert psi.log_value(p) == logpow_grad_norm_closed(3, 2.0, p).value.log_abs

    def test_gaussian_function_curve(self):
        f = gaussian_profile(3)
        psi = natural_psi(f, "function", (1.0, 10.0))
        assert math.isclose(psi(2.0), lp_norm_quad(f, 2.0).to_linear(), rel_tol=1e-12)

    def test_infinite_norm_identified(self):
        # gradient norms blow up at p = dim; an interval crossing it fails
        with pytest.raises(DomainError, match="not finite at p="):
            natural_psi(logpow_profile(3, 2.0), "gradient", (1.0, 5.0))


class TestGlsNorm:
    def test_natural_psi_normalizes_to_one(self):
        psi = natural_psi(logpow_profile(3, 2.0), "gradient", (1.0, 3.0))
        res = gls_norm(_curve_from_psi(psi), psi)
        assert res.converged
        assert math.isclose(res.to_linear(), 1.0, rel_tol=1e-12)

    def test_constant_ratio(self):
        psi = constant_psi((1.0, 3.0), 1.3)
        res = gls_norm(_curve_from_psi(psi, 2.0), psi)
        assert math.isclose(res.to_linear(), 2.0, rel_tol=1e-12)

    def test_scaling(self):
        psi = power_blowup((1.0, 3.0), 1.5, "upper")
        curve = lambda p: logpow_grad_norm_closed(3, 2.0, p).value
        base = gls_norm(curve, psi).to_linear()
        c = 7.5
        scaled = gls_norm(lambda p: LogValue.from_log(curve(p).log_abs + math.log(c)), psi)
        assert math.isclose(scaled.to_linear(), c * base, rel_tol=1e-10)

    def test_monotonicity_in_psi(self):
        curve = _curve_from_psi(constant_psi((1.0, 3.0), 1.0), 5.0)
        lo = gls_norm(curve, power_blowup((1.0, 3.0), 1.0, "upper"))
        hi = gls_norm(curve, power_blowup((1.0, 3.0), 2.0, "upper"))
        # (3-p)^-2 >= (3-p)^-1 only where 3-p <= 1; use constants instead
        small = gls_norm(curve, constant_psi((1.0, 3.0), 1.0))
        large = gls_norm(curve, constant_psi((1.0, 3.0), 2.0))
        assert small.to_linear() >= large.to_linear()
        assert lo.converged and hi.converged

    def test_power_blowup_case_against_dense_grid(self):
        # gradient curve of logpow(2) on (1,3) against psi = (3-p)^(-3/2):
        # the blow-up beats the gradient pole (order 1 + 1/3), so the ratio
        # vanishes at the upper end and peaks at the lower endpoint limit
        # 2 omega(3) / sqrt(2).
        curve = lambda p: logpow_grad_norm_closed(3, 2.0, p).value
        psi = power_blowup((1.0, 3.0), 1.5, "upper")
        res = gls_norm(curve, psi)
        grid = np.linspace(1.0 + 2e-6, 3.0 - 2e-6, 4096)
        dense = max(curve(float(p)).log_abs - psi.log_value(float(p)) for p in grid)
        limit = 2.0 * OMEGA_3 / math.sqrt(2.0)
        assert res.converged
        assert res.to_linear() >= math.exp(dense) * (1.0 - 1e-12)
        assert res.to_linear() <= limit * (1.0 + 1e-9)
        assert math.isclose(res.to_linear(), limit, rel_tol=1e-4)
        assert res.argmax_p < 1.0 + 1e-3

    @pytest.mark.parametrize("m,delta", [(3, 2.0), (10, 10.0), (50, 40.0)])
    def test_solver_matches_dense_grid_oracle(self, m, delta):
        # Interior maxima: golden-section result within 1e-6 of a 4096-point
        # dense grid over the same margins.
        psi = natural_psi(logpow_profile(m, delta), "gradient", (1.0, float(m)))
        nu = nu_transform(psi, m)
        curve = lambda q: logpow_norm_closed(m, delta, q).value
        res = gls_norm(curve, nu)
        A = nu.interval[0]
        ts = np.linspace(1e-6, 1.0 - 1e-6, 4096)
        dense = max(
            curve(A + t / (1.0 - t)).log_abs - nu.log_value(A + t / (1.0 - t))
            for t in ts
        )
        assert res.converged
        assert abs(res.to_linear() - math.exp(dense)) <= 1e-6 * math.exp(dense)

    def test_unbounded_ratio_reported_infinite(self):
        # ratio ~ (3-p)^(-1/2) grows without saturating at the upper end
        curve = lambda p: LogValue.from_log(-0.5 * math.log(3.0 - p))
        psi = constant_psi((1.0, 3.0), 1.0)
        with pytest.raises(DivergenceError, match="infinite"):
            gls_norm(curve, psi)

    def test_divergent_curve_reported(self):
        def curve(p):
            raise DivergenceError("norm diverges")
        with pytest.raises(DivergenceError):
            gls_norm(curve, constant_psi((1.0, 3.0), 1.0))

    def test_tie_breaks_to_smallest_argmax(self):
        psi = constant_psi((1.0, 3.0), 1.0)
        res = gls_norm(_curve_from_psi(psi), psi)  # ratio identically 1
        assert res.argmax_p <= 1.0 + 1e-5


class TestTransforms:
    def test_nu_composition_identity(self):
        psi = natural_psi(logpow_profile(3, 2.0), "gradient", (1.0, 3.0))
        nu = nu_transform(psi, 3)
        for q in (2.0, 6.0, 40.0):
            p = 3.0 * q / (3.0 + q)
            manual = talenti(3, p).value.log_abs + psi.log_value(p)
            assert nu.log_value(q) == manual

    def test_nu_interval_and_endpoints(self):
        nu = nu_transform(constant_psi((1.0, 3.0), 1.0), 3)
        assert math.isclose(nu.interval[0], 1.5, rel_tol=1e-15)
        assert math.isinf(nu.interval[1])
        assert math.isclose(nu(6.0), talenti(3, 2.0).to_linear(), rel_tol=1e-14)
        with pytest.raises(DomainError):
            nu.log_value(1.4)

    def test_zeta_composition_identity(self):
        psi = constant_psi((1.0, 3.0), 1.0)
        zeta = zeta_transform(psi, 2, 1)
        assert math.isclose(zeta(4.0), trace_upper(2, 1, 2.0).to_linear(),
                            rel_tol=1e-14)
        for q in (1.5, 4.0, 20.0):
            p = q * 3.0 / (2.0 + q)
            manual = trace_upper(2, 1, p).value.log_abs + psi.log_value(p)
            assert zeta.log_value(q) == manual
        assert math.isclose(zeta.interval[0], 1.0, rel_tol=1e-15)

    def test_zeta_requires_codimension(self):
        with pytest.raises(DomainError):
            zeta_transform(constant_psi((1.0, 3.0), 1.0), 3, 0)

    def test_theta_specializes_to_zeta(self):
        psi = constant_psi((1.0, 3.0), 1.0)
        zeta = zeta_transform(psi, 2, 1)
        theta = theta_transform(psi, 2, 1, 0.0,
                                bound=lambda p: trace_upper(2, 1, p))
        for q in (1.5, 4.0, 12.0):
            assert math.isclose(theta.log_value(q), zeta.log_value(q),
                                rel_tol=1e-15, abs_tol=1e-15)

    def test_theta_specializes_to_nu(self):
        psi = constant_psi((1.0, 3.0), 1.0)
        nu = nu_transform(psi, 3)
        theta = theta_transform(psi, 3, 0, 0.0, bound=lambda p: talenti(3, p))
        for q in (2.0, 6.0, 25.0):
            assert math.isclose(theta.log_value(q), nu.log_value(q),
                                rel_tol=1e-15, abs_tol=1e-15)

    def test_theta_pure_substitution(self):
        # alpha = 1/2, unit bound: theta(q) = psi(q N / (m + q/2))
        psi = tabulated_psi([(1.0, 2.0), (6.0, 3.0)])
        theta = theta_transform(psi, 2, 1, 0.5, bound=lambda p: 1.0)
        q = 4.0
        p = q * 3.0 / (2.0 + q * 0.5)
        assert math.isclose(theta.log_value(q), psi.log_value(p), rel_tol=1e-15)

    def test_theta_requires_bound_curve(self):
        with pytest.raises(UnsupportedConfigurationError):
            theta_transform(constant_psi((1.0, 3.0), 1.0), 2, 1, 0.5)
