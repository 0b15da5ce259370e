"""Scikit-learn style estimator facade over the functional core.

``RealizedHygarch`` accepts a (T, 2) array with columns (return, realized
measure) -- or a DataFrame with those column names, or a SeriesPair -- and
exposes fit / predict / score plus get_params / set_params, so the model
drops into sklearn-style pipelines and grid utilities.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .estimate import FitOptions, fit as _fit
from .loglik import filter_volatility, loglik
from .model import check_stationarity
from .risk import make_forecasts
from .sim import SeriesPair


def as_series_pair(X) -> SeriesPair:
    """Coerce supported inputs into a SeriesPair.

    Accepts a SeriesPair, a two-column array-like ordered (return,
    realized), or any object with named ``return``/``returns`` and
    ``realized`` columns.
    """
    if isinstance(X, SeriesPair):
        return X
    columns = getattr(X, "columns", None)
    if columns is not None:
        names = list(columns)
        ret_name = "return" if "return" in names else "returns"
        if ret_name not in names or "realized" not in names:
            raise ValueError(
                "frame input needs 'return' (or 'returns') and 'realized' columns")
        return SeriesPair(
            returns=np.asarray(X[ret_name], dtype=float),
            realized=np.asarray(X["realized"], dtype=float),
        )
    arr = check_array(X, ensure_2d=True, dtype=float)
    if arr.shape[1] != 2:
        raise ValueError(
            f"expected 2 columns (return, realized), got {arr.shape[1]}")
    return SeriesPair(returns=arr[:, 0], realized=arr[:, 1])


class RealizedHygarch(BaseEstimator):
    """Realized hyperbolic GARCH(1,d,1) quasi-maximum-likelihood estimator.

    Parameters
    ----------
    dist : {"gaussian", "student_t"}
        Conditional return distribution of the fitted likelihood.
    K : int
        Truncation length of the fractional volatility filter.
    drop_presample : bool
        Drop the first K observations from the likelihood sums instead of
        using the presample plug-in.
    grad_tol : float
        Convergence threshold on the finite-difference gradient norm of
        the mean log-likelihood.
    multistart : int
        Jittered restarts attempted when the first search does not meet
        ``grad_tol``.
    start : RhygarchParams or None
        Optional starting point; defaults to a moment-matched interior one.

    Attributes
    ----------
    params_ : RhygarchParams
        Estimated parameter vector.
    result_ : FitResult
        Full fit diagnostics (log-likelihood split, gradient norm, ...).
    converged_ : bool
    """

    def __init__(self, dist="gaussian", K=1000, drop_presample=False,
                 grad_tol=3e-3, multistart=2, start=None):
        self.dist = dist
        self.K = K
        self.drop_presample = drop_presample
        self.grad_tol = grad_tol
        self.multistart = multistart
        self.start = start

    def fit(self, X, y=None):
        """Estimate the model from aligned (return, realized) observations."""
        series = as_series_pair(X)
        options = FitOptions(
            grad_tol=self.grad_tol,
            multistart=self.multistart,
            drop_presample=self.drop_presample,
        )
        self.result_ = _fit(series, self.dist, self.K, self.start, options)
        self.params_ = self.result_.estimates
        self.converged_ = self.result_.converged
        self.loglik_ = self.result_.loglik.total
        self.series_ = series
        self.n_features_in_ = 2
        return self

    def predict(self, X=None):
        """Conditional variance series h_t implied by X (default: training data)."""
        check_is_fitted(self, "params_")
        series = self.series_ if X is None else as_series_pair(X)
        return np.exp(filter_volatility(self.params_, series.realized, self.K))

    def forecast(self, levels=(0.05, 0.01), convention="paper",
                 t_quantile="standardized"):
        """One-step-ahead VaR/ES forecasts from the end of the training data."""
        check_is_fitted(self, "params_")
        return make_forecasts(self.params_, self.series_.realized, self.K,
                              levels, convention, t_quantile)

    def score(self, X=None, y=None):
        """Mean log-likelihood per observation (higher is better)."""
        check_is_fitted(self, "params_")
        series = self.series_ if X is None else as_series_pair(X)
        value = loglik(self.params_, series, self.K, self.drop_presample)
        n = len(series) - (self.K if self.drop_presample else 0)
        return value.total / n

    def check_stationarity(self):
        """Moment diagnostics of the fitted parameters at truncation K."""
        check_is_fitted(self, "params_")
        return check_stationarity(self.params_, self.K)
