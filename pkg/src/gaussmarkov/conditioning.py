"""Conditional laws of Gaussian sub-vectors.

Conditioning a zero-mean Gaussian on a block of coordinates is a linear
projection: the conditional mean is the orthogonal projection of the target
onto the span of the observed coordinates (inner product = covariance), and
the centred conditional law is the law of the projection residual. Both are
carried by a :class:`ConditionalLaw` as ``(mean_map, conditional_covariance)``;
the residual law does not depend on the observed values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .linalg_core import cholesky
from .markov_model import GaussianModel

__all__ = [
    "ConditionalLaw",
    "condition",
    "markov_conditional_collapse",
    "conditional_independence_gap",
]


@dataclass(frozen=True)
class ConditionalLaw:
    """Law of ``X[target]`` given ``X[given] = y``.

    The conditional mean is ``mean_map @ y``; the conditional covariance is the
    Schur complement and may be only semidefinite.
    """

    target: tuple[int, ...]
    given: tuple[int, ...]
    mean_map: NDArray[np.float64]
    conditional_covariance: NDArray[np.float64]

    def mean(self, y) -> NDArray[np.float64]:
        return self.mean_map @ np.asarray(y, dtype=np.float64)

    def functional(self, n: int) -> NDArray[np.float64]:
        """Mean map as a ``(|target|, n)`` matrix, zero-padded over all coordinates."""
        full = np.zeros((len(self.target), n))
        full[:, list(self.given)] = self.mean_map
        return full


def _indices(idx: Sequence[int], n: int, name: str) -> tuple[int, ...]:
    out = tuple(int(i) for i in np.atleast_1d(idx))
    if not out:
        raise ValueError(f"{name} index set is empty")
    if len(set(out)) != len(out):
        raise ValueError(f"{name} indices repeat: {out}")
    bad = [i for i in out if not 0 <= i < n]
    if bad:
        raise IndexError(f"{name} indices out of range for n={n}: {bad}")
    return out


def condition(model: GaussianModel, target: Sequence[int], given: Sequence[int]) -> ConditionalLaw:
    """Condition ``X[target]`` on ``X[given]`` (zero-based index sets).

    ``mean_map = C_tg C_gg^-1`` and
    ``conditional_covariance = C_tt - C_tg C_gg^-1 C_gt``.
    """
    C = model.covariance
    t = _indices(target, model.n, "target")
    g = _indices(given, model.n, "given")
    if set(t) & set(g):
        raise ValueError(f"target and given overlap: {sorted(set(t) & set(g))}")
    C_gg = C[np.ix_(g, g)]
    C_gt = C[np.ix_(g, t)]
    mean_map = cholesky(C_gg).solve(C_gt).T
    cov = C[np.ix_(t, t)] - mean_map @ C_gt
    cov = 0.5 * (cov + cov.T)
    return ConditionalLaw(t, g, mean_map, cov)


def markov_conditional_collapse(
    model: GaussianModel, l: int, atol: float = 1e-9
) -> tuple[ConditionalLaw, ConditionalLaw, bool]:
    """Compare ``X_l | X_0..X_{l-1}`` with ``X_l | X_{l-1}``.

    Returns ``(full, single, agree)``, where ``agree`` means the two mean maps
    give the same linear functional and the conditional variances match, both
    within ``atol``. ``l`` is zero-based with ``2 <= l <= n - 1``.
    """
    n = model.n
    if not 2 <= l <= n - 1:
        raise IndexError(f"l must be in [2, {n - 1}], got {l}")
    full = condition(model, [l], range(l))
    single = condition(model, [l], [l - 1])
    agree = bool(
        np.max(np.abs(full.functional(n) - single.functional(n))) <= atol
        and abs(full.conditional_covariance[0, 0] - single.conditional_covariance[0, 0]) <= atol
    )
    return full, single, agree


def conditional_independence_gap(model: GaussianModel, k: int) -> float:
    """Largest past/future entry of the covariance of ``X`` given ``X_k``.

    Past is ``0..k-1`` and future ``k+1..n-1`` (zero-based, ``1 <= k <= n-2``).
    For a Gaussian vector the gap is zero exactly when past and future are
    conditionally independent given the present.
    """
    n = model.n
    if not 1 <= k <= n - 2:
        raise IndexError(f"k must be in [1, {n - 2}], got {k}")
    past = list(range(k))
    law = condition(model, past + list(range(k + 1, n)), [k])
    block = law.conditional_covariance[:k, k:]
    return float(np.max(np.abs(block)))
