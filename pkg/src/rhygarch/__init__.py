"""Realized hyperbolic GARCH(1,d,1) volatility modeling.

Joint dynamics of daily returns and a realized volatility measure with a
hyperbolically decaying (long-memory) volatility filter: simulation,
stationarity diagnostics, quasi-maximum-likelihood estimation under
Gaussian or standardized Student-t return shocks, one-step-ahead VaR and
expected-shortfall forecasting, and a Monte Carlo study harness.
"""

__version__ = "0.1.0"

from .dist import InnovationDist
from .estimate import FitOptions, FitResult, fit
from .estimator import RealizedHygarch
from .exceptions import DataError, DomainError, NonStationaryError, RhygarchError
from .filters import PsiWeights, fracdiff_coeffs, psi_weights
from .loglik import LikelihoodValue, filter_volatility, loglik_gg, loglik_tg
from .mc import McSummary, StudyConfig, emit_table, run_study
from .model import (RhygarchParams, StationarityReport, check_stationarity,
                    implied_means, validate)
from .risk import (RiskForecast, es_forecast, es_quadrature_oracle, forecast_h,
                   make_forecasts, var_forecast)
from .sim import SeriesPair, simulate

__all__ = [
    "DataError",
    "DomainError",
    "FitOptions",
    "FitResult",
    "InnovationDist",
    "LikelihoodValue",
    "McSummary",
    "NonStationaryError",
    "PsiWeights",
    "RealizedHygarch",
    "RhygarchError",
    "RhygarchParams",
    "RiskForecast",
    "SeriesPair",
    "StationarityReport",
    "StudyConfig",
    "check_stationarity",
    "emit_table",
    "es_forecast",
    "es_quadrature_oracle",
    "filter_volatility",
    "fit",
    "forecast_h",
    "fracdiff_coeffs",
    "implied_means",
    "loglik_gg",
    "loglik_tg",
    "make_forecasts",
    "psi_weights",
    "run_study",
    "simulate",
    "validate",
    "var_forecast",
    "__version__",
]
