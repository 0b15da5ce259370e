"""Model parameters, domain validation, and stationarity diagnostics.

The realized hyperbolic GARCH(1,d,1) couples three equations:

    r_t     = sqrt(h_t) * z_t
    log h_t = omega + delta*[1 - (1-gamma*L)/(1-beta*L) * (1-L)^d] log x_t
    log x_t = xi + phi*log h_t + tau1*z_t + tau2*(z_t^2 - 1) + u_t

with z_t a unit-variance shock, u_t ~ N(0, sigma_u^2) independent of z,
r_t the daily percent log-return and x_t a realized volatility measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .dist import GAUSSIAN, STUDENT_T, InnovationDist
from .exceptions import NonStationaryError
from .filters import PsiWeights, poly_mul, psi_weights

#: Numerical slack when checking the "all weights non-negative" condition;
#: the exact condition is infinite, so truncation plus tolerance is the
#: only checkable form.
PSI_NONNEG_TOL = 1e-12


@dataclass(frozen=True)
class RhygarchParams:
    """Full parameter vector of the (1,d,1) model.

    ``omega``  volatility-equation intercept
    ``gamma``  numerator lag coefficient
    ``beta``   denominator lag coefficient, |beta| < 1
    ``delta``  hyperbolic amplitude in [0, 1]
    ``d``      fractional order, >= 0
    ``xi``     measurement-equation intercept
    ``phi``    measurement loading on log h
    ``tau1``   linear leverage
    ``tau2``   quadratic leverage
    ``sigma_u`` measurement-noise standard deviation, > 0
    """

    omega: float
    gamma: float
    beta: float
    delta: float
    d: float
    xi: float
    phi: float
    tau1: float
    tau2: float
    sigma_u: float
    innovation: InnovationDist = field(default_factory=InnovationDist.gaussian)

    def psi(self, K: int) -> PsiWeights:
        return psi_weights(self.delta, self.d, self.gamma, self.beta, K)

    def replace(self, **changes) -> "RhygarchParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        """Flat JSON-ready mapping; ``nu`` present only for student-t."""
        out = {
            "omega": self.omega,
            "gamma": self.gamma,
            "beta": self.beta,
            "delta": self.delta,
            "d": self.d,
            "xi": self.xi,
            "phi": self.phi,
            "tau1": self.tau1,
            "tau2": self.tau2,
            "sigma_u": self.sigma_u,
            "innovation": self.innovation.kind,
        }
        if self.innovation.is_student_t:
            out["nu"] = self.innovation.nu
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "RhygarchParams":
        kind = obj.get("innovation", GAUSSIAN)
        if kind == STUDENT_T:
            innovation = InnovationDist.student_t(obj["nu"])
        elif kind == GAUSSIAN:
            innovation = InnovationDist.gaussian()
        else:
            raise ValueError(f"unknown innovation kind {kind!r}")
        return cls(
            omega=float(obj["omega"]),
            gamma=float(obj["gamma"]),
            beta=float(obj["beta"]),
            delta=float(obj["delta"]),
            d=float(obj["d"]),
            xi=float(obj["xi"]),
            phi=float(obj["phi"]),
            tau1=float(obj["tau1"]),
            tau2=float(obj["tau2"]),
            sigma_u=float(obj["sigma_u"]),
            innovation=innovation,
        )


def validate(params: RhygarchParams) -> list[str]:
    """Diagnostics list, one named violation per field; empty when valid."""
    out = []
    for name in ("omega", "gamma", "beta", "delta", "d", "xi", "phi",
                 "tau1", "tau2", "sigma_u"):
        if not np.isfinite(getattr(params, name)):
            out.append(f"{name} must be finite")
    if np.isfinite(params.delta) and not 0.0 <= params.delta <= 1.0:
        out.append("delta out of [0, 1]")
    if np.isfinite(params.d) and params.d < 0.0:
        out.append("d must be non-negative")
    if np.isfinite(params.beta) and not abs(params.beta) < 1.0:
        out.append("beta must satisfy |beta| < 1")
    if np.isfinite(params.sigma_u) and params.sigma_u <= 0.0:
        out.append("sigma_u must be positive")
    out.extend(params.innovation.violations())
    return out


@dataclass(frozen=True)
class StationarityReport:
    """Moment-condition diagnostics for a parameter set at truncation K."""

    sum_psi: float
    phi_sum_psi: float
    abs_sum_psi: float
    tail_estimate: float
    psi_min: float
    first_moment_ok: bool
    second_moment_ok: bool
    truncation: int

    def to_dict(self) -> dict:
        return {
            "sum_psi": self.sum_psi,
            "phi_sum_psi": self.phi_sum_psi,
            "abs_sum_psi": self.abs_sum_psi,
            "tail_estimate": self.tail_estimate,
            "psi_min": self.psi_min,
            "first_moment_ok": self.first_moment_ok,
            "second_moment_ok": self.second_moment_ok,
            "truncation": self.truncation,
        }


def check_stationarity(params: RhygarchParams, K: int = 1000) -> StationarityReport:
    """Evaluate the first- and second-moment existence conditions.

    First moment: phi * sum(psi) < 1 with absolutely summable weights.
    Second moment additionally needs omega = 0 exactly, phi > 0, every
    computed weight non-negative, and finite third/fourth shock moments
    (always true for the Gaussian; a student-t needs nu > 4).  Both flags
    are reported independently; estimation is never blocked on the second.
    """
    pw = params.psi(K)
    sum_psi = pw.partial_sum
    phi_sum = params.phi * sum_psi
    abs_sum = pw.abs_sum
    first_ok = bool(phi_sum < 1.0 and np.isfinite(abs_sum + pw.tail_estimate))

    innov = params.innovation
    moments_ok = (not innov.is_student_t) or (innov.nu is not None and innov.nu > 4.0)
    second_ok = bool(
        params.omega == 0.0
        and params.phi > 0.0
        and pw.minimum >= -PSI_NONNEG_TOL
        and moments_ok
    )
    return StationarityReport(
        sum_psi=sum_psi,
        phi_sum_psi=float(phi_sum),
        abs_sum_psi=abs_sum,
        tail_estimate=pw.tail_estimate,
        psi_min=pw.minimum,
        first_moment_ok=first_ok,
        second_moment_ok=second_ok,
        truncation=int(K),
    )


def implied_means(params: RhygarchParams, K: int = 1000) -> tuple[float, float]:
    """Unconditional means (E log h, E log x) under mean stationarity.

    Uses the truncated weight sum as psi(1).  Raises NonStationaryError
    when phi * psi(1) >= 1.
    """
    s = params.psi(K).partial_sum
    denom = 1.0 - params.phi * s
    if denom <= 0.0:
        raise NonStationaryError(
            f"phi * sum(psi) = {params.phi * s:.6g} >= 1; no finite mean",
            report=check_stationarity(params, K),
        )
    mean_log_h = (params.omega + params.xi * s) / denom
    mean_log_x = (params.xi + params.phi * params.omega) / denom
    return float(mean_log_h), float(mean_log_x)


def volterra_oracle(params: RhygarchParams, v_history, L_max: int, K: int) -> float:
    """Truncated Volterra expansion of log h_t in the innovations v.

    Evaluates sum_{l=0..L_max} H_l(t) with H_0 = omega and

        H_l(t) = sum_{i_1..i_l=1..K} phi^(l-1) psi_{i_1}...psi_{i_l}
                 * (omega*phi + v_{t-i_1-...-i_l}),

    where v_s = xi + tau(z_s) + u_s drives the measurement equation.
    ``v_history`` is chronological; its last entry is v_{t-1}.  Test oracle
    only: the l-th term is computed through the l-fold self-convolution of
    the weights, so cost grows like L_max * (L_max*K)^2.
    """
    if L_max < 0:
        raise ValueError("L_max must be >= 0")
    v = np.asarray(v_history, dtype=float)
    need = L_max * K
    if v.size < need:
        raise ValueError(
            f"v_history must cover at least L_max*K = {need} lags, got {v.size}"
        )
    total = params.omega
    if L_max == 0:
        return float(total)
    w = np.zeros(K + 1)
    w[1:] = params.psi(K).weights
    conv = w.copy()
    for level in range(1, L_max + 1):
        if level > 1:
            conv = poly_mul(conv, w, level * K)
        # conv[s] = sum over chains i_1+..+i_level = s of psi products
        lags = np.arange(level, level * K + 1)
        terms = params.omega * params.phi + v[v.size - lags]
        total += params.phi ** (level - 1) * float(conv[level:] @ terms)
    return float(total)
