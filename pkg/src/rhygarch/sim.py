"""Path simulation for the realized hyperbolic GARCH(1,d,1)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dist import rng_streams, sample
from .exceptions import NonStationaryError
from .model import RhygarchParams, check_stationarity, implied_means, validate


@dataclass
class SeriesPair:
    """Aligned daily return and realized-measure series.

    Latent arrays are populated only when the pair comes out of the
    simulator with ``keep_latents=True``.
    """

    returns: np.ndarray
    realized: np.ndarray
    latent_h: np.ndarray | None = None
    latent_z: np.ndarray | None = None
    latent_u: np.ndarray | None = None
    seed: int | None = None
    burn_in: int = 0
    truncation: int = 0

    def __post_init__(self):
        self.returns = np.asarray(self.returns, dtype=float)
        self.realized = np.asarray(self.realized, dtype=float)
        if self.returns.ndim != 1 or self.realized.ndim != 1:
            raise ValueError("returns and realized must be one-dimensional")
        if self.returns.size != self.realized.size:
            raise ValueError("returns and realized must have equal length")
        if self.returns.size < 1:
            raise ValueError("series must contain at least one observation")

    def __len__(self) -> int:
        return self.returns.size


def simulate(params: RhygarchParams, T: int, burn_in: int = 2000,
             K: int = 1000, seed: int = 0, keep_latents: bool = True,
             allow_nonstationary: bool = False) -> SeriesPair:
    """Generate T observations of (r_t, x_t) plus latents from the model.

    Presample log x is pinned at the implied unconditional mean so the
    burn-in only has to wash out randomness, not a level offset.  The z and
    u shocks come from independent streams derived from ``seed``, making
    the output a pure function of (params, T, burn_in, K, seed).

    Refuses non-first-moment-stationary parameters unless
    ``allow_nonstationary`` is set, in which case presample log x is 0.
    Unlike estimation, simulation tolerates sigma_u = 0 (a deterministic
    measurement equation).
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")
    problems = validate(params)
    if params.sigma_u == 0.0:
        problems = [p for p in problems if not p.startswith("sigma_u")]
    if problems:
        raise ValueError("invalid parameters: " + "; ".join(problems))

    report = check_stationarity(params, K)
    if not report.first_moment_ok:
        if not allow_nonstationary:
            raise NonStationaryError(
                "parameters fail the first-moment condition "
                f"(phi*sum(psi) = {report.phi_sum_psi:.6g})",
                report=report,
            )
        presample = 0.0
    else:
        presample = implied_means(params, K)[1]

    n = burn_in + T
    rng_z, rng_u = rng_streams(seed, 2)
    z = sample(params.innovation, 0.0, 1.0, n, rng_z)
    u = rng_u.standard_normal(n) * params.sigma_u

    # Reversed kernel so each step is a contiguous dot product.
    w_rev = params.psi(K).weights[::-1].copy()
    logx = np.empty(K + n)
    logx[:K] = presample
    logh = np.empty(n)
    omega, xi, phi = params.omega, params.xi, params.phi
    tau1, tau2 = params.tau1, params.tau2
    for t in range(n):
        lh = omega + float(w_rev @ logx[t : t + K])
        logh[t] = lh
        logx[K + t] = xi + phi * lh + tau1 * z[t] + tau2 * (z[t] * z[t] - 1.0) + u[t]

    h = np.exp(logh[burn_in:])
    zs = z[burn_in:]
    return SeriesPair(
        returns=np.sqrt(h) * zs,
        realized=np.exp(logx[K + burn_in :]),
        latent_h=h if keep_latents else None,
        latent_z=zs.copy() if keep_latents else None,
        latent_u=u[burn_in:].copy() if keep_latents else None,
        seed=int(seed),
        burn_in=int(burn_in),
        truncation=int(K),
    )
