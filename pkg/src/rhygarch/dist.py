"""Innovation distributions: standard normal and variance-standardized Student-t.

The Student-t variant is scaled by sqrt((nu-2)/nu) so that it has unit
variance for any nu > 2, which is the normalization the return equation
requires of its shocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

GAUSSIAN = "gaussian"
STUDENT_T = "student_t"

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class InnovationDist:
    """Return-shock distribution: standard normal or standardized Student-t.

    ``nu`` is the degrees of freedom and must exceed 2 for the student_t
    kind (the unit-variance scaling sqrt((nu-2)/nu) is undefined otherwise).
    """

    kind: str = GAUSSIAN
    nu: float | None = None

    @classmethod
    def gaussian(cls) -> "InnovationDist":
        return cls(GAUSSIAN)

    @classmethod
    def student_t(cls, nu: float) -> "InnovationDist":
        return cls(STUDENT_T, float(nu))

    @property
    def is_student_t(self) -> bool:
        return self.kind == STUDENT_T

    def violations(self) -> list[str]:
        """Invariant diagnostics; empty list means the instance is valid."""
        out = []
        if self.kind not in (GAUSSIAN, STUDENT_T):
            out.append(f"unknown innovation kind {self.kind!r}")
        if self.kind == STUDENT_T:
            if self.nu is None or not np.isfinite(self.nu) or self.nu <= 2.0:
                out.append("nu must be > 2 for student_t innovations")
        elif self.nu is not None:
            out.append("nu is only meaningful for student_t innovations")
        return out


def _check_nu(nu: float) -> float:
    nu = float(nu)
    if not np.isfinite(nu) or nu <= 2.0:
        raise ValueError(f"degrees of freedom must be > 2, got {nu}")
    return nu


def _check_prob(p) -> None:
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0.0) or np.any(p >= 1.0):
        raise ValueError("probability must lie strictly inside (0, 1)")


def norm_pdf(x):
    """Standard normal density (2*pi)^(-1/2) exp(-x^2/2)."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x - _LOG_SQRT_2PI)
    return out if out.ndim else float(out)


def norm_cdf(x):
    """Standard normal CDF, accurate in both tails."""
    x = np.asarray(x, dtype=float)
    out = special.ndtr(x)
    return out if out.ndim else float(out)


def norm_quantile(p):
    """Inverse standard normal CDF for p in (0, 1)."""
    _check_prob(p)
    out = special.ndtri(np.asarray(p, dtype=float))
    return out if out.ndim else float(out)


def std_t_pdf(x, nu: float):
    """Density of the unit-variance Student-t with ``nu`` > 2 dof."""
    nu = _check_nu(nu)
    x = np.asarray(x, dtype=float)
    logc = special.gammaln(0.5 * (nu + 1.0)) - special.gammaln(0.5 * nu)
    logc -= 0.5 * math.log(math.pi * (nu - 2.0))
    out = np.exp(logc - 0.5 * (nu + 1.0) * np.log1p(x * x / (nu - 2.0)))
    return out if out.ndim else float(out)


def std_t_cdf(x, nu: float):
    """CDF of the unit-variance Student-t; T = X*sqrt((nu-2)/nu), X ~ t(nu)."""
    nu = _check_nu(nu)
    scale = math.sqrt((nu - 2.0) / nu)
    out = stats.t.cdf(np.asarray(x, dtype=float) / scale, df=nu)
    return out if np.ndim(out) else float(out)


def std_t_quantile(p, nu: float):
    """Inverse CDF of the unit-variance Student-t for p in (0, 1)."""
    nu = _check_nu(nu)
    _check_prob(p)
    scale = math.sqrt((nu - 2.0) / nu)
    out = scale * stats.t.ppf(np.asarray(p, dtype=float), df=nu)
    return out if np.ndim(out) else float(out)


def pdf(dist: InnovationDist, x):
    """Density of ``dist`` evaluated at x."""
    if dist.is_student_t:
        return std_t_pdf(x, dist.nu)
    return norm_pdf(x)


def cdf(dist: InnovationDist, x):
    if dist.is_student_t:
        return std_t_cdf(x, dist.nu)
    return norm_cdf(x)


def quantile(dist: InnovationDist, p):
    """Quantile of ``dist`` at probability p."""
    if dist.is_student_t:
        return std_t_quantile(p, dist.nu)
    return norm_quantile(p)


def sample(dist: InnovationDist, mean: float, sd: float, n: int,
           stream: np.random.Generator) -> np.ndarray:
    """Draw n i.i.d. variates with the given mean and standard deviation.

    The caller owns ``stream``; identical generator state yields an
    identical sequence.
    """
    if sd < 0.0:
        raise ValueError("sd must be non-negative")
    if sd == 0.0:
        return np.full(n, float(mean))
    if dist.is_student_t:
        nu = _check_nu(dist.nu)
        z = stream.standard_t(nu, size=n) * math.sqrt((nu - 2.0) / nu)
    else:
        z = stream.standard_normal(n)
    return mean + sd * z


def rng_streams(seed, n: int) -> list[np.random.Generator]:
    """n independent generators derived from one master seed."""
    root = np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in root.spawn(n)]


def derive_seed(master_seed: int, index: int) -> int:
    """Stable integer seed for stream ``index`` of a study.

    Independent of how many other streams exist, so replication k's data
    never change when the study size changes.
    """
    ss = np.random.SeedSequence([int(master_seed), int(index)])
    return int(ss.generate_state(1, np.uint64)[0])
