"""Lag-polynomial machinery for the hyperbolic volatility filter.

The (1,d,1) GARCH equation uses the distributed lag

    psi(L) = delta * {1 - (1 - gamma*L) * (1 - beta*L)^(-1) * (1 - L)^d},

whose coefficients decay hyperbolically like k^(-1-d) for d in (0, 1).
Everything here works on truncated coefficient arrays indexed from lag 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter


def fracdiff_coeffs(d: float, K: int) -> np.ndarray:
    """Coefficients c_0..c_K of the fractional difference (1 - L)^d.

    Uses the stable ratio recursion c_k = c_{k-1} * (k - 1 - d) / k, which
    is exactly the Gamma-ratio binomial expansion.
    """
    d = float(d)
    if d < 0.0:
        raise ValueError(f"fractional order d must be >= 0, got {d}")
    if K < 0:
        raise ValueError("K must be >= 0")
    c = np.ones(K + 1)
    if K >= 1:
        k = np.arange(1, K + 1, dtype=float)
        c[1:] = np.cumprod((k - 1.0 - d) / k)
    return c


def poly_mul(a, b, K: int) -> np.ndarray:
    """Cauchy product of two coefficient sequences, truncated at lag K."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros(K + 1)
    prod = np.convolve(a, b)[: K + 1]
    out[: prod.size] = prod
    return out


def poly_div_geometric(a, beta: float, K: int) -> np.ndarray:
    """Divide a coefficient sequence by (1 - beta*L), truncated at lag K.

    Returns q with q_k = a_k + beta * q_{k-1}; multiplying the result back
    by [1, -beta] reproduces the input exactly up to lag K.
    """
    beta = float(beta)
    if not abs(beta) < 1.0:
        raise ValueError(f"|beta| must be < 1, got {beta}")
    a = np.asarray(a, dtype=float)
    padded = np.zeros(K + 1)
    padded[: min(a.size, K + 1)] = a[: K + 1]
    # lfilter with denominator [1, -beta] is exactly the q_k recursion.
    return lfilter([1.0], [1.0, -beta], padded)


@dataclass(frozen=True)
class PsiWeights:
    """Truncated weight sequence psi_1..psi_K of the volatility filter."""

    weights: np.ndarray
    truncation: int
    partial_sum: float
    tail_estimate: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.size != self.truncation:
            raise ValueError("weights must have exactly K entries")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must all be finite")

    @property
    def abs_sum(self) -> float:
        return float(np.abs(self.weights).sum())

    @property
    def minimum(self) -> float:
        return float(self.weights.min())


def _tail_estimate(weights: np.ndarray, d: float, beta: float, K: int) -> float:
    """Upper estimate of the weight mass beyond lag K.

    Power-law extrapolation C * sum_{k>K} k^(-1-d) (integral bound) for
    d > 0; geometric continuation otherwise.
    """
    last = abs(float(weights[-1]))
    if last == 0.0:
        return 0.0
    if d > 0.0:
        scale = last * K ** (1.0 + d)
        return scale * K ** (-d) / d
    b = abs(beta)
    if b == 0.0:
        return 0.0
    return last * b / (1.0 - b)


def psi_weights(delta: float, d: float, gamma: float, beta: float,
                K: int) -> PsiWeights:
    """Truncated expansion of the (1,d,1) hyperbolic volatility filter.

    Builds a(L) = (1 - gamma*L) * (1 - beta*L)^(-1) * (1 - L)^d and returns
    psi_k = -delta * a_k for k = 1..K; the lag-0 terms cancel, so psi_0 = 0
    by construction and is not stored.  For d > 0 the weight sum tends to
    delta as K grows because (1-L)^d vanishes at L = 1.
    """
    delta = float(delta)
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if K < 1:
        raise ValueError("K must be >= 1")
    numer = poly_mul(fracdiff_coeffs(d, K), [1.0, -float(gamma)], K)
    a = poly_div_geometric(numer, beta, K)
    w = -delta * a[1:]
    return PsiWeights(
        weights=w,
        truncation=int(K),
        partial_sum=float(w.sum()),
        tail_estimate=_tail_estimate(w, float(d), float(beta), int(K))
        if delta != 0.0
        else 0.0,
    )
