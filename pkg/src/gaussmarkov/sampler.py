"""Sampling Markov Gaussian chains and Monte Carlo entropy checks.

Random source
-------------
Draws must be bit-identical across platforms and NumPy releases for a fixed
seed, so the generator's own normal sampler is not used. Instead:

1. ``numpy.random.PCG64(seed).random_raw()`` yields the raw 64-bit PCG64
   (XSL-RR 128/64) output stream, which is fixed by the algorithm.
2. Each word becomes a double in ``(0, 1]`` as ``((w >> 11) + 1) * 2**-53``.
3. Consecutive pairs ``(u1, u2)`` go through Box-Muller:
   ``sqrt(-2 ln u1) * cos(2 pi u2)`` then ``sqrt(-2 ln u1) * sin(2 pi u2)``.

Normals fill the ``(count, n)`` array in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .linalg_core import as_symmetric, cholesky
from .markov_model import ChainSpec, GaussianModel

__all__ = [
    "PinnedNormal",
    "SampleBatch",
    "SymmetricMixture",
    "sample_chain",
    "sample_gaussian",
    "empirical_covariance",
    "sample_matched_nongaussian",
    "monte_carlo_cross_entropy",
    "monte_carlo_entropy",
]

_TWO_POW_M53 = 2.0**-53


class PinnedNormal:
    """Standard normal stream from raw PCG64 words and Box-Muller."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._bits = np.random.PCG64(self.seed)

    def uniform(self, size: int) -> NDArray[np.float64]:
        """``size`` doubles in ``(0, 1]``."""
        raw = np.asarray(self._bits.random_raw(size), dtype=np.uint64)
        return ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * _TWO_POW_M53

    def normal(self, size: int) -> NDArray[np.float64]:
        pairs = (size + 1) // 2
        u = self.uniform(2 * pairs).reshape(pairs, 2)
        r = np.sqrt(-2.0 * np.log(u[:, 0]))
        theta = 2.0 * np.pi * u[:, 1]
        z = np.column_stack([r * np.cos(theta), r * np.sin(theta)]).ravel()
        return z[:size]


@dataclass(frozen=True)
class SampleBatch:
    values: NDArray[np.float64]
    seed: int | None = None

    @property
    def count(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]


def sample_chain(spec: ChainSpec, count: int, seed: int) -> SampleBatch:
    """Draw ``count`` vectors by running the chain forward.

    ``X_0 = s_0 Z_0`` and
    ``X_l = (s_l r_{l-1} / s_{l-1}) X_{l-1} + s_l sqrt(1 - r_{l-1}^2) Z_l``.
    """
    if count < 1:
        raise ValueError("count must be positive")
    s = np.asarray(spec.sigma)
    r = np.asarray(spec.rho)
    Z = PinnedNormal(seed).normal(count * spec.n).reshape(count, spec.n)
    X = np.empty_like(Z)
    X[:, 0] = s[0] * Z[:, 0]
    for l in range(1, spec.n):
        slope = s[l] * r[l - 1] / s[l - 1]
        X[:, l] = slope * X[:, l - 1] + s[l] * np.sqrt(1.0 - r[l - 1] ** 2) * Z[:, l]
    return SampleBatch(X, seed)


def sample_gaussian(c: ArrayLike, count: int, seed: int) -> SampleBatch:
    """Generic ``N(0, c)`` draws through the Cholesky factor."""
    L = cholesky(c).lower
    Z = PinnedNormal(seed).normal(count * L.shape[0]).reshape(count, L.shape[0])
    return SampleBatch(Z @ L.T, seed)


def empirical_covariance(batch: SampleBatch | ArrayLike) -> NDArray[np.float64]:
    """Zero-mean second-moment estimate ``X^T X / count``."""
    X = batch.values if isinstance(batch, SampleBatch) else np.asarray(batch, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1:
        raise ValueError(f"expected a (count, n) array, got shape {X.shape}")
    S = X.T @ X / X.shape[0]
    return 0.5 * (S + S.T)


class SymmetricMixture:
    """``0.5 N(mu, c - mu mu^T) + 0.5 N(-mu, c - mu mu^T)``.

    The mixture has mean zero and covariance exactly ``c``; it is non-Gaussian
    whenever ``mu != 0``.
    """

    def __init__(self, c: ArrayLike, mu: ArrayLike):
        self.covariance = as_symmetric(c, atol=1e-12)
        self.mu = np.asarray(mu, dtype=np.float64).ravel()
        if self.mu.shape != (self.covariance.shape[0],):
            raise ValueError(f"mu has shape {self.mu.shape}, expected ({self.covariance.shape[0]},)")
        reduced = self.covariance - np.outer(self.mu, self.mu)
        self.component = GaussianModel.from_covariance(reduced)

    @property
    def n(self) -> int:
        return self.mu.size

    def sample(self, count: int, seed: int) -> SampleBatch:
        stream = PinnedNormal(seed)
        Z = stream.normal(count * self.n).reshape(count, self.n)
        signs = np.where(stream.uniform(count) <= 0.5, 1.0, -1.0)
        X = Z @ self.component.chol.lower.T + signs[:, None] * self.mu
        return SampleBatch(X, seed)

    def logpdf(self, x: ArrayLike) -> NDArray[np.float64]:
        x = np.asarray(x, dtype=np.float64)
        plus = self.component.logpdf(x - self.mu)
        minus = self.component.logpdf(x + self.mu)
        return np.logaddexp(plus, minus) - np.log(2.0)


def sample_matched_nongaussian(c: ArrayLike, count: int, seed: int, mu: ArrayLike) -> SampleBatch:
    """Draws from :class:`SymmetricMixture` with covariance ``c``.

    Raises ``NotPositiveDefinite`` when ``c - mu mu^T`` is not positive definite.
    """
    return SymmetricMixture(c, mu).sample(count, seed)


def _mean_and_se(values: NDArray[np.float64]) -> tuple[float, float]:
    m = values.size
    mean = float(np.mean(values))
    se = float(np.std(values, ddof=1) / np.sqrt(m)) if m > 1 else 0.0
    return mean, se


def monte_carlo_cross_entropy(batch: SampleBatch, g: GaussianModel) -> tuple[float, float]:
    """Mean and standard error of ``-ln g(X)`` over the batch."""
    if batch.n != g.n:
        raise ValueError(f"dimension mismatch: batch has n={batch.n}, model n={g.n}")
    return _mean_and_se(-g.logpdf(batch.values))


def monte_carlo_entropy(batch: SampleBatch, logpdf) -> tuple[float, float]:
    """Mean and standard error of ``-logpdf(X)``: the entropy estimate of the sampling density."""
    return _mean_and_se(-np.asarray(logpdf(batch.values)))
