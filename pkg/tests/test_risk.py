import math

import numpy as np
import pytest

from rhygarch.dist import InnovationDist, norm_pdf, norm_quantile, std_t_quantile
from rhygarch.filters import psi_weights
from rhygarch.risk import (RiskForecast, es_forecast, es_quadrature_oracle,
                           forecast_h, make_forecasts, var_forecast)
from rhygarch.sim import simulate

GAUSS = InnovationDist.gaussian()

# sqrt(h) implied by the published 5% and 1% VaR figures
SQRT_H_5 = 1.8547 / 1.6448536269514729
SQRT_H_1 = 2.6834 / 2.3263478740408408


class TestForecastH:
    def test_delta_zero(self, model1):
        p = model1.replace(delta=0.0, omega=0.2)
        rng = np.random.default_rng(0)
        x = np.exp(rng.normal(size=100))
        assert forecast_h(p, x, 50) == pytest.approx(math.exp(0.2), rel=1e-12)

    def test_constant_history(self, model1):
        c = 0.6
        x = np.full(600, math.exp(c))
        s = psi_weights(model1.delta, model1.d, model1.gamma, model1.beta,
                        4096).partial_sum
        got = forecast_h(model1, x, 4096)
        assert got == pytest.approx(math.exp(model1.omega + c * s), rel=1e-12)
        # with d > 0 the weight sum approaches delta, so the forecast
        # approaches exp(omega + c*delta)
        assert abs(math.log(got) - (model1.omega + c * model1.delta)) \
            <= abs(c) * abs(s - model1.delta) + 1e-12

    def test_deterministic_fixed_point(self, model1):
        p = model1.replace(tau1=0.0, tau2=0.0, sigma_u=0.0)
        data = simulate(p, T=300, burn_in=100, K=256, seed=1)
        assert forecast_h(p, data.realized, 256) == pytest.approx(
            math.exp(0.1), rel=1e-10)

    def test_matches_next_step_of_longer_simulation(self, model1):
        a = simulate(model1, T=500, burn_in=200, K=300, seed=2)
        h = forecast_h(model1, a.realized[:499], 300)
        # the forecast uses the presample plug-in, so agreement with the
        # simulator's h_500 is approximate but close late in the sample
        assert math.log(h) == pytest.approx(math.log(a.latent_h[499]), abs=0.05)


class TestVarForecast:
    def test_median_zero(self):
        assert var_forecast(1.0, 0.5, GAUSS) == pytest.approx(0.0, abs=1e-14)

    def test_gaussian_tail(self):
        assert var_forecast(1.0, 0.05, GAUSS) == pytest.approx(
            -1.6448536269514729, abs=1e-9)

    def test_published_value_from_matched_h(self):
        assert var_forecast(SQRT_H_5 ** 2, 0.05, GAUSS) == pytest.approx(
            -1.8547, abs=1e-9)

    def test_exact_quantile_identity(self):
        h = 1.7
        t5 = InnovationDist.student_t(5.0)
        assert var_forecast(h, 0.05, t5) == math.sqrt(h) * std_t_quantile(0.05, 5.0)
        assert var_forecast(h, 0.05, GAUSS) == math.sqrt(h) * norm_quantile(0.05)

    def test_raw_quantile_toggle(self):
        from scipy import stats

        t3 = InnovationDist.student_t(3.0)
        raw = var_forecast(1.0, 0.05, t3, t_quantile="raw")
        assert raw == pytest.approx(stats.t.ppf(0.05, 3), abs=1e-10)
        std = var_forecast(1.0, 0.05, t3)
        assert abs(raw) > abs(std)

    def test_convention_does_not_change_var(self):
        assert var_forecast(2.0, 0.05, GAUSS, "paper") == \
            var_forecast(2.0, 0.05, GAUSS, "standard")

    def test_domain(self):
        with pytest.raises(ValueError):
            var_forecast(0.0, 0.05, GAUSS)
        with pytest.raises(ValueError):
            var_forecast(1.0, 1.0, GAUSS)
        with pytest.raises(ValueError):
            var_forecast(1.0, 0.05, GAUSS, convention="fancy")


class TestEsForecast:
    def test_published_table_values(self):
        assert es_forecast(SQRT_H_5 ** 2, 0.05, GAUSS, "paper") == pytest.approx(
            0.1224, abs=5e-4)
        assert es_forecast(SQRT_H_1 ** 2, 0.01, GAUSS, "paper") == pytest.approx(
            0.0310, abs=5e-4)

    def test_standard_gaussian_tail_mean(self):
        got = es_forecast(1.0, 0.05, GAUSS, "standard")
        assert got == pytest.approx(-norm_pdf(norm_quantile(0.05)) / 0.05,
                                    abs=1e-12)
        assert got == pytest.approx(-2.0627128075074253, abs=1e-9)

    def test_paper_at_median(self):
        assert es_forecast(1.0, 0.5, GAUSS, "paper") == pytest.approx(
            norm_pdf(0.0) / 0.5, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.01, 0.05, 0.1])
    def test_gaussian_standard_matches_quadrature(self, alpha):
        closed = es_forecast(1.3, alpha, GAUSS, "standard")
        oracle = es_quadrature_oracle(1.3, alpha, GAUSS)
        assert closed == pytest.approx(oracle, abs=1e-6)

    @pytest.mark.parametrize("nu", [3.0, 5.0, 10.0])
    @pytest.mark.parametrize("alpha", [0.01, 0.05, 0.1])
    def test_student_standard_matches_quadrature(self, nu, alpha):
        dist = InnovationDist.student_t(nu)
        closed = es_forecast(1.0, alpha, dist, "standard")
        oracle = es_quadrature_oracle(1.0, alpha, dist)
        assert closed == pytest.approx(oracle, abs=1e-5)

    def test_paper_ratio_consistency(self):
        # ES/|VaR| under the published convention is a pure function of alpha
        for alpha, var_pub, es_pub in ((0.05, 1.8547, 0.1224),
                                       (0.01, 2.6834, 0.0310)):
            q = norm_quantile(alpha)
            ratio = norm_pdf(q) / ((1 - alpha) * abs(q))
            assert ratio * var_pub == pytest.approx(es_pub, abs=5e-4)

    def test_positive_homogeneity(self):
        rng = np.random.default_rng(3)
        t7 = InnovationDist.student_t(7.0)
        for _ in range(20):
            c = float(rng.uniform(0.1, 4.0))
            h = float(rng.uniform(0.2, 3.0))
            for dist in (GAUSS, t7):
                assert var_forecast(c * c * h, 0.05, dist) == pytest.approx(
                    c * var_forecast(h, 0.05, dist), rel=1e-12)
                for conv in ("paper", "standard"):
                    assert es_forecast(c * c * h, 0.05, dist, conv) == pytest.approx(
                        c * es_forecast(h, 0.05, dist, conv), rel=1e-12)


class TestQuadratureOracle:
    def test_full_distribution_mean_is_zero(self):
        assert abs(es_quadrature_oracle(1.0, 1 - 1e-9, GAUSS)) < 1e-4
        assert abs(es_quadrature_oracle(1.0, 1 - 1e-9,
                                        InnovationDist.student_t(5.0))) < 1e-4

    def test_median_split_symmetry(self):
        # at alpha = 1/2 the tail mean is -E|T| (up to the 1/2 weight)
        from scipy import integrate
        from rhygarch.dist import std_t_pdf

        e_abs, _ = integrate.quad(lambda x: 2 * x * std_t_pdf(x, 3.0), 0, np.inf)
        got = es_quadrature_oracle(1.0, 0.5, InnovationDist.student_t(3.0))
        assert got == pytest.approx(-e_abs, abs=1e-7)


class TestRiskForecastContainer:
    def test_invariants_and_serialization(self, model2):
        data = simulate(model2, T=400, burn_in=200, K=256, seed=4,
                        keep_latents=False)
        for conv in ("paper", "standard"):
            out = make_forecasts(model2, data.realized, 256, (0.05, 0.01), conv)
            assert len(out) == 2
            for fc in out:
                assert isinstance(fc, RiskForecast)
                assert fc.h_next > 0
                q = std_t_quantile(fc.level, 3.0)
                assert fc.var_value == math.sqrt(fc.h_next) * q
                if conv == "standard":
                    assert fc.es_value <= fc.var_value
                blob = fc.to_dict()
                assert blob["nu"] == 3.0
                assert blob["convention"] == conv
