"""One-step-ahead variance forecasts and parametric VaR / expected shortfall.

Two ES conventions are supported.  ``paper`` evaluates

    ES_a = sqrt(h) * pdf(q_a) / (1 - a)            (Gaussian)
    ES_a = sqrt(h) * pdf(q_a)/(1-a) * (nu + q_a^2)/(nu - 1)   (Student-t)

verbatim: a positive number with a 1-a denominator, which is what the
published summary tables use.  ``standard`` is the usual lower-tail
conditional mean E[r | r <= VaR_a], negative for small a and divided by a,
and is what a risk desk would consume.  VaR itself is identical under both.

For Student-t innovations the quantile (and density) can be taken from the
unit-variance distribution (``standardized``, the default, consistent with
the model's shocks) or from the raw t distribution (``raw``), which some
published figures appear to use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, stats

from .dist import InnovationDist, norm_pdf, norm_quantile, std_t_pdf, std_t_quantile
from .loglik import _check_positive
from .model import RhygarchParams

CONVENTIONS = ("paper", "standard")
T_QUANTILE_MODES = ("standardized", "raw")


@dataclass(frozen=True)
class RiskForecast:
    """One-step-ahead variance with VaR/ES at one tail level."""

    h_next: float
    level: float
    var_value: float
    es_value: float
    convention: str
    dist: InnovationDist

    def to_dict(self) -> dict:
        out = {
            "h_next": self.h_next,
            "alpha": self.level,
            "var": self.var_value,
            "es": self.es_value,
            "convention": self.convention,
            "dist": self.dist.kind,
        }
        if self.dist.is_student_t:
            out["nu"] = self.dist.nu
        return out


def _check_args(h: float, alpha: float, convention: str, t_quantile: str):
    if not h > 0.0:
        raise ValueError("forecast variance h must be positive")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    if t_quantile not in T_QUANTILE_MODES:
        raise ValueError(f"t_quantile must be one of {T_QUANTILE_MODES}")


def forecast_h(params: RhygarchParams, x_history, K: int) -> float:
    """Variance forecast h_{T+1} = exp(omega + sum_i psi_i log x_{T+1-i}).

    Lags reaching before the history use the sample mean of log x, exactly
    as the in-sample filter does.
    """
    x = _check_positive(x_history)
    logx = np.log(x)
    T = logx.size
    padded = np.empty(K + T)
    padded[:K] = logx.mean()
    padded[K:] = logx
    w_rev = params.psi(K).weights[::-1]
    return float(np.exp(params.omega + w_rev @ padded[T : T + K]))


def var_forecast(h: float, alpha: float, dist: InnovationDist,
                 convention: str = "paper",
                 t_quantile: str = "standardized") -> float:
    """VaR_alpha = sqrt(h) * quantile(alpha); shared by both conventions."""
    _check_args(h, alpha, convention, t_quantile)
    if dist.is_student_t and t_quantile == "raw":
        q = float(stats.t.ppf(alpha, df=dist.nu))
    else:
        q = float(std_t_quantile(alpha, dist.nu)) if dist.is_student_t \
            else float(norm_quantile(alpha))
    return math.sqrt(h) * q


def es_forecast(h: float, alpha: float, dist: InnovationDist,
                convention: str = "paper",
                t_quantile: str = "standardized") -> float:
    """Expected shortfall under the chosen convention (see module docs)."""
    _check_args(h, alpha, convention, t_quantile)
    sqrt_h = math.sqrt(h)
    if not dist.is_student_t:
        q = float(norm_quantile(alpha))
        dens = float(norm_pdf(q))
        if convention == "paper":
            return sqrt_h * dens / (1.0 - alpha)
        return -sqrt_h * dens / alpha

    nu = dist.nu
    if convention == "paper":
        if t_quantile == "raw":
            q = float(stats.t.ppf(alpha, df=nu))
            dens = float(stats.t.pdf(q, df=nu))
        else:
            q = float(std_t_quantile(alpha, nu))
            dens = float(std_t_pdf(q, nu))
        return sqrt_h * dens / (1.0 - alpha) * (nu + q * q) / (nu - 1.0)
    # standard: exact lower-tail mean of the unit-variance t via the raw-t
    # partial moment, integral x*f(x) over (-inf, q] = -f(q)*(nu+q^2)/(nu-1).
    scale = math.sqrt((nu - 2.0) / nu)
    q_raw = float(stats.t.ppf(alpha, df=nu))
    partial = -float(stats.t.pdf(q_raw, df=nu)) * (nu + q_raw * q_raw) / (nu - 1.0)
    return sqrt_h * scale * partial / alpha


def es_quadrature_oracle(h: float, alpha: float, dist: InnovationDist) -> float:
    """Numerical lower-tail mean; independent check of the closed forms.

    Integrates x * f(x) over (-inf, quantile(alpha)] by adaptive
    quadrature, divides by alpha, scales by sqrt(h).
    """
    if not h > 0.0:
        raise ValueError("forecast variance h must be positive")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if dist.is_student_t:
        q = float(std_t_quantile(alpha, dist.nu))
        integrand = lambda x: x * std_t_pdf(x, dist.nu)
    else:
        q = float(norm_quantile(alpha))
        integrand = lambda x: x * norm_pdf(x)
    value, _ = integrate.quad(integrand, -np.inf, q, epsabs=1e-12, epsrel=1e-10)
    return math.sqrt(h) * value / alpha


def make_forecasts(params: RhygarchParams, x_history, K: int, levels,
                   convention: str = "paper",
                   t_quantile: str = "standardized") -> list[RiskForecast]:
    """Variance forecast plus VaR/ES at each requested tail level."""
    h = forecast_h(params, x_history, K)
    out = []
    for alpha in levels:
        out.append(RiskForecast(
            h_next=h,
            level=float(alpha),
            var_value=var_forecast(h, alpha, params.innovation, convention, t_quantile),
            es_value=es_forecast(h, alpha, params.innovation, convention, t_quantile),
            convention=convention,
            dist=params.innovation,
        ))
    return out
