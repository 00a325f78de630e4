"""Markov Gaussian chains built from band data.

A zero-mean Gaussian vector is pinned down by its variances and the
correlations of neighbouring coordinates once we also require the Markov
property. Its correlations then multiply along the chain,

    rho_kl = rho_{k,k+1} * rho_{k+1,k+2} * ... * rho_{l-1,l},

and its precision matrix is tridiagonal with explicit entries. In
correlation scale (``G = D A D``, ``D = diag(sigma)``):

    G_ii     = (1 - r_{i-1}^2 r_i^2) / ((1 - r_{i-1}^2)(1 - r_i^2))
    G_{i,i+1} = -r_i / (1 - r_i^2)

with the convention ``r_0 = r_n = 0`` at the two ends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .linalg_core import CholeskyFactor, as_symmetric, cholesky, inverse

__all__ = [
    "RHO_CAP",
    "ChainSpec",
    "GaussianModel",
    "band_coefficients",
    "product_rule_correlation",
    "markov_covariance",
    "markov_precision",
    "markov_logdet",
    "build_model",
]

#: Adjacent correlations must satisfy ``|rho| < RHO_CAP``.
RHO_CAP = 1.0 - 1e-12


@dataclass(frozen=True)
class ChainSpec:
    """Band data: standard deviations and adjacent correlations.

    ``sigma`` has length ``n``; ``rho`` has length ``n - 1`` with ``rho[i]``
    the correlation of coordinates ``i`` and ``i + 1`` (zero-based).
    """

    sigma: tuple[float, ...]
    rho: tuple[float, ...] = ()

    def __post_init__(self):
        sigma = tuple(float(s) for s in np.ravel(self.sigma))
        rho = tuple(float(r) for r in np.ravel(self.rho))
        if len(sigma) < 1:
            raise ValueError("need at least one standard deviation")
        if len(rho) != len(sigma) - 1:
            raise ValueError(
                f"expected {len(sigma) - 1} adjacent correlations, got {len(rho)}"
            )
        if not all(np.isfinite(s) and s > 0 for s in sigma):
            raise ValueError(f"standard deviations must be positive and finite: {sigma}")
        if not all(np.isfinite(r) and abs(r) < RHO_CAP for r in rho):
            raise ValueError(f"adjacent correlations must lie strictly inside (-1, 1): {rho}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "rho", rho)

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def unit(cls, rho: Sequence[float]) -> "ChainSpec":
        """Spec with all standard deviations equal to one."""
        rho = tuple(np.ravel(rho))
        return cls(sigma=(1.0,) * (len(rho) + 1), rho=rho)

    def with_rho(self, rho: Sequence[float]) -> "ChainSpec":
        return ChainSpec(self.sigma, tuple(rho))

    def to_dict(self) -> dict:
        return {"sigma": list(self.sigma), "rho": list(self.rho)}


def band_coefficients(rho: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Diagonal and off-diagonal of the correlation-scale precision.

    Returns ``(alpha, beta)`` with ``len(alpha) == len(rho) + 1``.
    """
    r = np.asarray(rho, dtype=np.float64).ravel()
    r2 = np.concatenate([[0.0], r, [0.0]]) ** 2
    left, right = r2[:-1], r2[1:]
    alpha = (1.0 - left * right) / ((1.0 - left) * (1.0 - right))
    beta = -r / (1.0 - r * r)
    return alpha, beta


def product_rule_correlation(rho: ArrayLike) -> NDArray[np.float64]:
    """Correlation matrix whose entries are products of the band along the chain."""
    r = np.asarray(rho, dtype=np.float64).ravel()
    n = r.size + 1
    R = np.eye(n)
    for k in range(n - 1):
        R[k, k + 1:] = np.cumprod(r[k:])
    return np.triu(R) + np.triu(R, 1).T


def markov_covariance(spec: ChainSpec) -> NDArray[np.float64]:
    """Covariance ``c_kl = sigma_k sigma_l prod_{j=k}^{l-1} rho_j``."""
    s = np.asarray(spec.sigma)
    C = product_rule_correlation(spec.rho) * np.outer(s, s)
    np.fill_diagonal(C, s * s)
    return C


def markov_precision(spec: ChainSpec) -> NDArray[np.float64]:
    """Closed-form tridiagonal precision ``A = D^-1 G D^-1``.

    Entries with ``|i - j| >= 2`` are exactly zero.
    """
    alpha, beta = band_coefficients(spec.rho)
    inv_s = 1.0 / np.asarray(spec.sigma)
    A = np.diag(alpha * inv_s * inv_s)
    off = beta * inv_s[:-1] * inv_s[1:]
    idx = np.arange(spec.n - 1)
    A[idx, idx + 1] = off
    A[idx + 1, idx] = off
    return A


def markov_logdet(spec: ChainSpec) -> float:
    """``ln det C = sum 2 ln sigma_i + sum ln(1 - rho_i^2)``."""
    s = np.asarray(spec.sigma)
    r = np.asarray(spec.rho)
    return float(2.0 * np.sum(np.log(s)) + np.sum(np.log1p(-r * r)))


@dataclass(frozen=True)
class GaussianModel:
    """Zero-mean Gaussian law with covariance, precision and Cholesky factor.

    Build Markov chains with :func:`build_model`; arbitrary SPD covariances
    with :meth:`from_covariance`.
    """

    covariance: NDArray[np.float64]
    precision: NDArray[np.float64]
    chol: CholeskyFactor
    logdet: float
    spec: ChainSpec | None = field(default=None, compare=False)

    @classmethod
    def from_covariance(cls, c: ArrayLike) -> "GaussianModel":
        C = as_symmetric(c)
        f = cholesky(C)
        return cls(covariance=C, precision=inverse(f), chol=f, logdet=f.logdet)

    @property
    def n(self) -> int:
        return self.covariance.shape[0]

    def logpdf(self, x: ArrayLike) -> NDArray[np.float64] | float:
        """Log density at ``x`` (shape ``(n,)`` or ``(m, n)``)."""
        x = np.asarray(x, dtype=np.float64)
        quad = np.einsum("...i,ij,...j->...", x, self.precision, x)
        return -0.5 * (self.n * np.log(2 * np.pi) + self.logdet + quad)


def build_model(spec: ChainSpec) -> GaussianModel:
    """Markov Gaussian model with closed-form precision and log-determinant."""
    C = markov_covariance(spec)
    return GaussianModel(
        covariance=C,
        precision=markov_precision(spec),
        chol=cholesky(C),
        logdet=markov_logdet(spec),
        spec=spec,
    )
