"""Euclidean counterpart: unit-vector bases, flags, dual bases.

A zero-mean Gaussian vector with unit variances is the same thing as an
ordered basis of unit vectors ``e_0..e_{n-1}`` whose Gram matrix is the
correlation matrix. The dual basis ``f`` (``<f_i, e_j> = delta_ij``) has the
inverse Gram matrix, i.e. the precision. Prefix spans ``S_k`` and suffix spans
``T_k`` form two compatible flags and the Markov property becomes a statement
about orthogonal projections onto them.

Index conventions: basis vectors are zero-based rows. A "split" ``k`` with
``1 <= k <= n - 1`` separates the first ``k`` vectors from the rest, so
``S_k = span(e_0..e_{k-1})`` and ``T_{n-k} = span(e_k..e_{n-1})``. A "pivot"
``k`` is the zero-based position of a single vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .linalg_core import as_symmetric, cholesky, inverse, project
from .markov_model import band_coefficients, product_rule_correlation

__all__ = [
    "Basis",
    "FlagPair",
    "basis_from_gram",
    "markov_basis",
    "dual_closed_form",
    "projection_parallelism_gap",
    "symmetric_parallelism_gap",
    "split_orthogonality_gap",
    "markov_basis_gaps",
    "is_markov_basis",
    "MARKOV_CRITERIA",
]

#: Names of the four equivalent characterizations checked by :func:`is_markov_basis`.
MARKOV_CRITERIA = ("projection", "product_rule", "dual_recurrence", "dual_gram")

UNIT_ATOL = 1e-12


@dataclass(frozen=True)
class Basis:
    """Ordered basis of unit vectors, one per row of ``vectors``."""

    vectors: NDArray[np.float64]

    def __post_init__(self):
        E = np.array(self.vectors, dtype=np.float64)
        if E.ndim != 2 or E.shape[0] != E.shape[1]:
            raise ValueError(f"need n vectors in n-space, got shape {E.shape}")
        norms = np.linalg.norm(E, axis=1)
        if np.max(np.abs(norms - 1.0)) > UNIT_ATOL:
            raise ValueError(f"basis vectors must have unit length, norms {norms}")
        E.setflags(write=False)
        object.__setattr__(self, "vectors", E)
        # linear independence
        cholesky(self.gram)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @cached_property
    def gram(self) -> NDArray[np.float64]:
        G = self.vectors @ self.vectors.T
        return 0.5 * (G + G.T)

    @cached_property
    def dual_gram(self) -> NDArray[np.float64]:
        return inverse(self.gram)

    @cached_property
    def dual(self) -> NDArray[np.float64]:
        """Rows ``f_i`` with ``<f_i, e_j> = delta_ij``."""
        return self.dual_gram @ self.vectors

    def reversed(self) -> "Basis":
        return Basis(self.vectors[::-1].copy())


@dataclass(frozen=True)
class FlagPair:
    """The prefix flag ``S`` and suffix flag ``T`` generated by a basis."""

    basis: Basis

    def S(self, k: int) -> NDArray[np.float64]:
        """Spanning vectors of ``S_k`` (first ``k`` basis vectors)."""
        return self.basis.vectors[:k]

    def T(self, k: int) -> NDArray[np.float64]:
        """Spanning vectors of ``T_k`` (last ``k`` basis vectors)."""
        return self.basis.vectors[self.basis.n - k:]

    @staticmethod
    def _projector(B: NDArray[np.float64], n: int) -> NDArray[np.float64]:
        if len(B) == 0:
            return np.zeros((n, n))
        return np.column_stack([project(B, col) for col in np.eye(n)])

    def P(self, k: int) -> NDArray[np.float64]:
        return self._projector(self.S(k), self.basis.n)

    def Q(self, k: int) -> NDArray[np.float64]:
        return self._projector(self.T(k), self.basis.n)

    def M(self, pivot: int) -> NDArray[np.float64]:
        """Projector onto the line through ``e_pivot``, i.e. ``S_{p+1} ∩ T_{n-p}``."""
        e = self.basis.vectors[pivot]
        return np.outer(e, e)

    def intersection_dim(self, pivot: int, tol: float = 1e-10) -> int:
        """``dim(S_{p+1} ∩ T_{n-p})``; equals 1 for compatible flags."""
        n = self.basis.n
        S, T = self.S(pivot + 1), self.T(n - pivot)
        stacked = np.vstack([S, T])
        sv = np.linalg.svd(stacked, compute_uv=False)
        rank = int(np.sum(sv > tol * sv[0]))
        return len(S) + len(T) - rank

    def compatible(self) -> bool:
        return all(self.intersection_dim(p) == 1 for p in range(self.basis.n))


def basis_from_gram(g: ArrayLike, atol: float = 1e-12) -> Basis:
    """Realize a unit-diagonal SPD Gram matrix by the rows of its Cholesky factor."""
    G = as_symmetric(g, atol=atol)
    if np.max(np.abs(np.diag(G) - 1.0)) > atol:
        raise ValueError("Gram matrix must have unit diagonal")
    L = np.array(cholesky(G).lower)
    L /= np.linalg.norm(L, axis=1, keepdims=True)
    return Basis(L)


def markov_basis(rho: ArrayLike) -> Basis:
    """Markov basis with ``<e_i, e_{i+1}> = rho[i]``."""
    r = np.asarray(rho, dtype=np.float64).ravel()
    if np.any(~(np.abs(r) < 1)):
        raise ValueError(f"adjacent inner products must lie in (-1, 1): {r}")
    return basis_from_gram(product_rule_correlation(r))


def dual_closed_form(basis: Basis) -> NDArray[np.float64]:
    """Three-term dual ``f_i = b_{i-1} e_{i-1} + a_i e_i + b_i e_{i+1}``.

    Coefficients come from the adjacent inner products only; the result is the
    true dual basis only when ``basis`` is Markov.
    """
    E = basis.vectors
    alpha, beta = band_coefficients(np.diag(basis.gram, 1))
    F = alpha[:, None] * E
    F[:-1] += beta[:, None] * E[1:]
    F[1:] += beta[:, None] * E[:-1]
    return F


def _parallel_residual(u: NDArray[np.float64], e: NDArray[np.float64]) -> float:
    return float(np.linalg.norm(u - (u @ e) * e))


def projection_parallelism_gap(basis: Basis, k: int) -> float:
    """Distance of ``P_k e_k`` from the line through ``e_{k-1}`` (split ``k``)."""
    if not 1 <= k <= basis.n - 1:
        raise IndexError(f"split k must be in [1, {basis.n - 1}], got {k}")
    E = basis.vectors
    return _parallel_residual(project(E[:k], E[k]), E[k - 1])


def symmetric_parallelism_gap(basis: Basis, k: int) -> float:
    """Distance of ``Q_{n-k} e_{k-1}`` from the line through ``e_k`` (split ``k``)."""
    if not 1 <= k <= basis.n - 1:
        raise IndexError(f"split k must be in [1, {basis.n - 1}], got {k}")
    E = basis.vectors
    return _parallel_residual(project(E[k:], E[k - 1]), E[k])


def split_orthogonality_gap(basis: Basis, k: int) -> float:
    """Largest normalized inner product between ``M'S`` and ``M'T`` around pivot ``k``.

    ``M' = I - e_k e_k^T`` is applied to the vectors before and after ``e_k``;
    the result is the largest ``|cos|`` between one image from each side.
    """
    if not 1 <= k <= basis.n - 2:
        raise IndexError(f"pivot k must be in [1, {basis.n - 2}], got {k}")
    E = basis.vectors
    e = E[k]
    past = E[:k] - np.outer(E[:k] @ e, e)
    future = E[k + 1:] - np.outer(E[k + 1:] @ e, e)
    past /= np.linalg.norm(past, axis=1, keepdims=True)
    future /= np.linalg.norm(future, axis=1, keepdims=True)
    return float(np.max(np.abs(past @ future.T)))


def markov_basis_gaps(basis: Basis) -> dict[str, float]:
    """Violation magnitudes of the four Markov characterizations.

    ``projection``: worst projection-parallelism gap over all splits.
    ``product_rule``: worst ``|<e_k, e_l> - prod of adjacent products|``.
    ``dual_recurrence``: worst ``||f_i - three-term formula||``.
    ``dual_gram``: worst off-band ``|<f_i, f_j>|``, relative to the largest entry.
    """
    n = basis.n
    G = basis.gram
    if n < 3:
        proj = 0.0
    else:
        proj = max(projection_parallelism_gap(basis, k) for k in range(1, n))
    i, j = np.indices(G.shape)
    far = np.abs(i - j) >= 2
    product = product_rule_correlation(np.diag(G, 1))
    prod_gap = float(np.max(np.abs(G - product)[far], initial=0.0))
    recur = float(np.max(np.linalg.norm(basis.dual - dual_closed_form(basis), axis=1)))
    H = basis.dual_gram
    dgram = float(np.max(np.abs(H[far]), initial=0.0) / np.max(np.abs(H)))
    return {"projection": proj, "product_rule": prod_gap,
            "dual_recurrence": recur, "dual_gram": dgram}


def is_markov_basis(basis: Basis, tol: float = 1e-7) -> tuple[bool, tuple[bool, bool, bool, bool]]:
    """Check the four equivalent Markov characterizations.

    Returns the conjunction and the per-criterion verdicts, in the order of
    :data:`MARKOV_CRITERIA`.
    """
    gaps = markov_basis_gaps(basis)
    verdicts = tuple(gaps[name] <= tol for name in MARKOV_CRITERIA)
    return all(verdicts), verdicts
