"""Differential entropy of Gaussian laws, in nats.

``dent = 0.5 * (n * ln(2 pi e) + ln det C)``. The cross-entropy of any
zero-mean density ``f`` against a Gaussian ``g`` depends on ``f`` only
through its covariance, which is why :func:`cross_entropy_vs_gaussian` takes
a matrix rather than a density.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from numpy.typing import ArrayLike

from .linalg_core import as_symmetric, cholesky
from .markov_model import ChainSpec, GaussianModel, markov_logdet

__all__ = [
    "LOG_2PI_E",
    "EntropyReport",
    "entropy_from_logdet",
    "gaussian_entropy",
    "markov_entropy",
    "cross_entropy_vs_gaussian",
    "gaussian_kl",
]

LOG_2PI_E = float(np.log(2 * np.pi * np.e))


@dataclass(frozen=True)
class EntropyReport:
    dent: float
    logdet: float
    n: int

    def to_dict(self) -> dict:
        return asdict(self)


def entropy_from_logdet(n: int, logdet: float) -> EntropyReport:
    return EntropyReport(dent=0.5 * (n * LOG_2PI_E + logdet), logdet=float(logdet), n=int(n))


def gaussian_entropy(model: GaussianModel) -> EntropyReport:
    return entropy_from_logdet(model.n, model.logdet)


def markov_entropy(spec: ChainSpec) -> EntropyReport:
    """Entropy of the Markov chain from band data alone."""
    return entropy_from_logdet(spec.n, markov_logdet(spec))


def cross_entropy_vs_gaussian(cov_of_f: ArrayLike, g: GaussianModel) -> float:
    """``-E_f ln g(X)`` for a zero-mean ``f`` with covariance ``cov_of_f``.

    Equals ``0.5 * (n ln 2pi + ln det C_g + tr(A_g cov_of_f))``; reduces to the
    entropy of ``g`` when the covariances coincide.
    """
    S = as_symmetric(cov_of_f, atol=1e-12)
    if S.shape != g.covariance.shape:
        raise ValueError(f"dimension mismatch: {S.shape} vs {g.covariance.shape}")
    trace = float(np.sum(g.precision * S))
    return 0.5 * (g.n * np.log(2 * np.pi) + g.logdet + trace)


def gaussian_kl(cov_of_f: ArrayLike, g: GaussianModel) -> float:
    """``KL(N(0, cov_of_f) || g)``: cross-entropy minus the entropy of ``f``."""
    f_logdet = cholesky(as_symmetric(cov_of_f, atol=1e-12)).logdet
    return cross_entropy_vs_gaussian(cov_of_f, g) - entropy_from_logdet(g.n, f_logdet).dent
