import numpy as np
import pytest

from rhygarch.exceptions import NonStationaryError
from rhygarch.model import implied_means
from rhygarch.sim import SeriesPair, simulate


def batch_means_se(x, n_batches=64):
    """Standard error of the sample mean for an autocorrelated series."""
    n = x.size // n_batches
    means = x[: n * n_batches].reshape(n_batches, n).mean(axis=1)
    return means.std(ddof=1) / np.sqrt(n_batches)


class TestSeriesPair:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            SeriesPair(returns=np.zeros(3), realized=np.ones(4))

    def test_empty(self):
        with pytest.raises(ValueError):
            SeriesPair(returns=np.zeros(0), realized=np.zeros(0))


class TestDeterministicFixedPoint:
    def test_constant_volatility_path(self, model1):
        p = model1.replace(tau1=0.0, tau2=0.0, sigma_u=0.0)
        out = simulate(p, T=50, burn_in=100, K=200, seed=1)
        assert np.allclose(np.log(out.latent_h), 0.1, atol=1e-12)
        assert np.allclose(np.log(out.realized), 0.0, atol=1e-12)

    def test_pure_noise_collapse(self, model1):
        p = model1.replace(delta=0.0, omega=0.0, xi=0.0,
                           tau1=0.0, tau2=0.0, sigma_u=0.0)
        out = simulate(p, T=5000, burn_in=10, K=50, seed=2)
        assert np.allclose(out.latent_h, 1.0, atol=1e-14)
        assert np.array_equal(out.returns, out.latent_z)
        assert abs(out.returns.var() - 1.0) < 0.06


class TestTheorem1Means:
    def test_sample_means_match_implied(self, model1):
        out = simulate(model1, T=60000, burn_in=2000, K=1000, seed=3)
        logh = np.log(out.latent_h)
        logx = np.log(out.realized)
        mh, mx = implied_means(model1, 1000)
        assert abs(logh.mean() - mh) <= 3 * batch_means_se(logh)
        assert abs(logx.mean() - mx) <= 3 * batch_means_se(logx)


class TestStructure:
    def test_return_identity(self, model1):
        out = simulate(model1, T=400, burn_in=300, K=300, seed=4)
        assert np.allclose(out.returns,
                           np.sqrt(out.latent_h) * out.latent_z, atol=1e-14)

    def test_measurability_prefix(self, model1):
        # extending the sample must not change earlier draws: z_t never
        # looks at x_s for s >= t
        a = simulate(model1, T=300, burn_in=150, K=200, seed=5)
        b = simulate(model1, T=420, burn_in=150, K=200, seed=5)
        assert np.array_equal(a.returns, b.returns[:300])
        assert np.array_equal(a.realized, b.realized[:300])

    def test_seed_determinism(self, model1):
        a = simulate(model1, T=250, burn_in=100, K=150, seed=6)
        b = simulate(model1, T=250, burn_in=100, K=150, seed=6)
        assert np.array_equal(a.returns, b.returns)
        assert np.array_equal(a.realized, b.realized)
        c = simulate(model1, T=250, burn_in=100, K=150, seed=7)
        assert not np.array_equal(a.returns, c.returns)

    def test_student_t_shocks(self, model2):
        out = simulate(model2, T=20000, burn_in=500, K=300, seed=8)
        z = out.latent_z
        assert abs(z.mean()) < 0.05
        assert abs(z.var() - 1.0) < 0.1
        # heavier tails than Gaussian
        assert np.mean(np.abs(z) > 3.0) > 0.005

    def test_latents_optional(self, model1):
        out = simulate(model1, T=50, burn_in=10, K=50, seed=9, keep_latents=False)
        assert out.latent_h is None and out.latent_z is None and out.latent_u is None


class TestRefusal:
    def test_nonstationary_raises_with_report(self, model1):
        bad = model1.replace(phi=3.0, delta=0.9)
        with pytest.raises(NonStationaryError) as err:
            simulate(bad, T=100, burn_in=10, K=200, seed=0)
        assert err.value.report is not None
        assert not err.value.report.first_moment_ok

    def test_override_runs(self, model1):
        bad = model1.replace(phi=3.0, delta=0.9)
        out = simulate(bad, T=30, burn_in=5, K=100, seed=0,
                       allow_nonstationary=True)
        assert len(out) == 30

    def test_invalid_params_rejected(self, model1):
        with pytest.raises(ValueError):
            simulate(model1.replace(delta=1.4), T=10, burn_in=5, K=20, seed=0)

    def test_bad_sizes(self, model1):
        with pytest.raises(ValueError):
            simulate(model1, T=0, burn_in=5, K=20, seed=0)
        with pytest.raises(ValueError):
            simulate(model1, T=10, burn_in=-1, K=20, seed=0)
