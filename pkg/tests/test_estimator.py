import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import make_model1
from rhygarch.estimator import RealizedHygarch, as_series_pair
from rhygarch.sim import SeriesPair, simulate


@pytest.fixture(scope="module")
def training_data():
    data = simulate(make_model1(), T=600, burn_in=800, K=400, seed=33,
                    keep_latents=False)
    return data, np.column_stack([data.returns, data.realized])


@pytest.fixture(scope="module")
def fitted_estimator(training_data):
    _, X = training_data
    est = RealizedHygarch(K=400, multistart=1)
    return est.fit(X)


class TestInputCoercion:
    def test_series_pair_passthrough(self, training_data):
        data, _ = training_data
        assert as_series_pair(data) is data

    def test_two_column_array(self, training_data):
        data, X = training_data
        pair = as_series_pair(X)
        assert np.array_equal(pair.returns, data.returns)
        assert np.array_equal(pair.realized, data.realized)

    def test_dataframe_named_columns(self, training_data):
        pd = pytest.importorskip("pandas")
        data, _ = training_data
        frame = pd.DataFrame({"realized": data.realized, "return": data.returns})
        pair = as_series_pair(frame)
        assert np.array_equal(pair.returns, data.returns)

    def test_wrong_width_rejected(self):
        with pytest.raises(ValueError):
            as_series_pair(np.zeros((10, 3)))


class TestSklearnContract:
    def test_get_set_params_and_clone(self):
        est = RealizedHygarch(dist="student_t", K=256)
        params = est.get_params()
        assert params["dist"] == "student_t" and params["K"] == 256
        twin = clone(est)
        assert twin.get_params() == params
        est.set_params(K=128)
        assert est.K == 128

    def test_not_fitted_errors(self):
        est = RealizedHygarch()
        with pytest.raises(NotFittedError):
            est.predict()
        with pytest.raises(NotFittedError):
            est.forecast()

    def test_fit_returns_self_and_sets_state(self, fitted_estimator):
        est = fitted_estimator
        assert est.n_features_in_ == 2
        assert hasattr(est, "params_") and hasattr(est, "result_")
        assert isinstance(est.converged_, bool)


class TestBehaviour:
    def test_predict_variance_series(self, fitted_estimator, training_data):
        data, X = training_data
        h = fitted_estimator.predict()
        assert h.shape == (600,)
        assert np.all(h > 0)
        assert np.array_equal(h, fitted_estimator.predict(X))

    def test_score_is_mean_loglik(self, fitted_estimator):
        total = fitted_estimator.result_.loglik.total
        assert fitted_estimator.score() == pytest.approx(total / 600, rel=1e-12)

    def test_forecast_levels(self, fitted_estimator):
        out = fitted_estimator.forecast(levels=(0.05, 0.01))
        assert [f.level for f in out] == [0.05, 0.01]
        assert out[0].var_value < 0
        std = fitted_estimator.forecast(levels=(0.05,), convention="standard")
        assert std[0].es_value <= std[0].var_value

    def test_check_stationarity(self, fitted_estimator):
        report = fitted_estimator.check_stationarity()
        assert isinstance(report.first_moment_ok, bool)

    def test_matches_functional_fit(self, training_data):
        from rhygarch.estimate import FitOptions, fit

        data, X = training_data
        est = RealizedHygarch(K=400, multistart=1).fit(X)
        direct = fit(data, "gaussian", 400, options=FitOptions(multistart=1))
        assert est.result_.loglik.total == direct.loglik.total
        assert est.params_ == direct.estimates
