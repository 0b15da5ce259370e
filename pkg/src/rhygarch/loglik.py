"""Volatility filtering and the two quasi-log-likelihoods.

Both likelihoods share the Gaussian measurement equation; they differ in
the conditional return density (Gaussian vs unit-variance Student-t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal, special

from .dist import GAUSSIAN, STUDENT_T
from .exceptions import DataError
from .model import RhygarchParams
from .sim import SeriesPair

LOG_2PI = math.log(2.0 * math.pi)

#: log h is clipped to this window during optimization so pathological
#: trial points cannot overflow exp(); clip events are counted, never
#: silently swallowed.
DEFAULT_CLAMP = (-30.0, 30.0)


@dataclass
class LikelihoodValue:
    """Log-likelihood split into its return and measurement parts."""

    total: float
    returns_part: float
    measure_part: float
    z_resid: np.ndarray
    u_resid: np.ndarray
    logh: np.ndarray
    clamp_events: int = 0


def _check_positive(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    bad = np.flatnonzero(~(x > 0.0))
    if bad.size:
        raise DataError(f"realized measure must be positive; first offense at index {bad[0]}")
    return x


def filter_volatility(params: RhygarchParams, x, K: int,
                      clamp: tuple[float, float] = DEFAULT_CLAMP,
                      count_clamps: bool = False):
    """log h_t implied by observed realized measures.

    log h_t = omega + sum_{i=1..K} psi_i * log x_{t-i}, with lags reaching
    before the sample replaced by the sample mean of log x.  Returns the
    log-variance sequence, plus the clamp count when requested.
    """
    x = _check_positive(x)
    logx = np.log(x)
    T = logx.size
    padded = np.empty(K + T)
    padded[:K] = logx.mean()
    padded[K:] = logx
    kernel = params.psi(K).weights
    conv = signal.convolve(padded, kernel, mode="full", method="auto")
    logh = params.omega + conv[K - 1 : K - 1 + T]
    clamps = 0
    if clamp is not None:
        lo, hi = clamp
        clamps = int(np.count_nonzero((logh < lo) | (logh > hi)))
        if clamps:
            logh = np.clip(logh, lo, hi)
    if count_clamps:
        return logh, clamps
    return logh


def _measurement_part(params: RhygarchParams, logx, logh, z):
    if params.sigma_u <= 0.0:
        raise ValueError("sigma_u must be positive")
    u = logx - params.xi - params.phi * logh - params.tau1 * z \
        - params.tau2 * (z * z - 1.0)
    s2 = params.sigma_u ** 2
    part = -0.5 * np.sum(LOG_2PI + math.log(s2) + u * u / s2)
    return float(part), u


def _filtered_pieces(params, data: SeriesPair, K, drop_presample, clamp):
    logh, clamps = filter_volatility(params, data.realized, K, clamp, True)
    r = data.returns
    logx = np.log(data.realized)
    start = 0
    if drop_presample:
        if K >= len(data):
            raise ValueError("drop_presample leaves no observations")
        start = K
    h = np.exp(logh)
    z = r / np.sqrt(h)
    return logh, clamps, r[start:], logx[start:], logh[start:], h[start:], z[start:]


def loglik_gg(params: RhygarchParams, data: SeriesPair, K: int,
              drop_presample: bool = False,
              clamp: tuple[float, float] = DEFAULT_CLAMP) -> LikelihoodValue:
    """Gaussian-Gaussian quasi-log-likelihood.

    returns part: -1/2 sum(log 2pi + log h_t + r_t^2 / h_t)
    measure part: -1/2 sum(log 2pi + log sigma_u^2 + u_t^2 / sigma_u^2)
    """
    if params.innovation.kind != GAUSSIAN:
        raise ValueError("loglik_gg requires gaussian innovations")
    logh_full, clamps, r, logx, logh, h, z = _filtered_pieces(
        params, data, K, drop_presample, clamp)
    returns_part = float(-0.5 * np.sum(LOG_2PI + logh + r * r / h))
    measure_part, u = _measurement_part(params, logx, logh, z)
    return LikelihoodValue(
        total=returns_part + measure_part,
        returns_part=returns_part,
        measure_part=measure_part,
        z_resid=z,
        u_resid=u,
        logh=logh_full,
        clamp_events=clamps,
    )


def loglik_tg(params: RhygarchParams, data: SeriesPair, K: int,
              drop_presample: bool = False,
              clamp: tuple[float, float] = DEFAULT_CLAMP) -> LikelihoodValue:
    """Student-Gaussian quasi-log-likelihood.

    The return shocks follow the unit-variance Student-t, so each term is
    A(nu) + 1/2*log[pi*(nu-2)] + 1/2*log h_t
    + (nu+1)/2 * log[1 + r_t^2/(h_t*(nu-2))] with
    A(nu) = log Gamma(nu/2) - log Gamma((nu+1)/2), entering negatively.
    """
    if params.innovation.kind != STUDENT_T:
        raise ValueError("loglik_tg requires student_t innovations")
    nu = params.innovation.nu
    if nu is None or nu <= 2.0:
        raise ValueError("student_t innovations need nu > 2")
    logh_full, clamps, r, logx, logh, h, z = _filtered_pieces(
        params, data, K, drop_presample, clamp)
    a_nu = float(special.gammaln(0.5 * nu) - special.gammaln(0.5 * (nu + 1.0)))
    returns_part = float(-np.sum(
        a_nu
        + 0.5 * math.log(math.pi * (nu - 2.0))
        + 0.5 * logh
        + 0.5 * (nu + 1.0) * np.log1p(r * r / (h * (nu - 2.0)))
    ))
    measure_part, u = _measurement_part(params, logx, logh, z)
    return LikelihoodValue(
        total=returns_part + measure_part,
        returns_part=returns_part,
        measure_part=measure_part,
        z_resid=z,
        u_resid=u,
        logh=logh_full,
        clamp_events=clamps,
    )


def loglik(params: RhygarchParams, data: SeriesPair, K: int,
           drop_presample: bool = False,
           clamp: tuple[float, float] = DEFAULT_CLAMP) -> LikelihoodValue:
    """Dispatch on the parameter set's innovation kind."""
    fn = loglik_tg if params.innovation.is_student_t else loglik_gg
    return fn(params, data, K, drop_presample, clamp)
