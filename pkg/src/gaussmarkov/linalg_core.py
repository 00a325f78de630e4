"""Dense symmetric linear algebra for small positive definite matrices.

Everything else in the package goes through this module: an unpivoted
Cholesky factorization that refuses degenerate input instead of producing
NaNs, and the solve / inverse / determinant / projection helpers built on it.

Matrices are plain ``float64`` ndarrays. :func:`as_symmetric` is the single
gatekeeper for the "symmetric matrix" contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import solve_triangular

__all__ = [
    "NotPositiveDefinite",
    "CholeskyFactor",
    "as_symmetric",
    "cholesky",
    "det",
    "logdet",
    "solve",
    "inverse",
    "project",
    "PIVOT_RTOL",
]

#: Relative pivot floor: a pivot ``<= PIVOT_RTOL * max(diag)`` is rejected.
PIVOT_RTOL = 1e-12


class NotPositiveDefinite(np.linalg.LinAlgError):
    """Raised when a Cholesky pivot falls below the pivot floor.

    Attributes
    ----------
    index : int
        Zero-based position of the offending pivot.
    pivot : float
        Value of the pivot (before the square root).
    """

    def __init__(self, index: int, pivot: float, message: str | None = None):
        self.index = index
        self.pivot = pivot
        if message is None:
            message = f"matrix is not positive definite (pivot {index} = {pivot:.3e})"
        super().__init__(message)


def as_symmetric(m: ArrayLike, atol: float = 0.0) -> NDArray[np.float64]:
    """Validate ``m`` as a square symmetric matrix and return a float copy.

    With ``atol=0`` the two triangles must agree exactly. With ``atol > 0``
    small asymmetries are accepted and the result is symmetrized, so the
    returned array always satisfies ``a[i, j] == a[j, i]`` bit for bit.
    """
    a = np.array(m, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    asym = np.max(np.abs(a - a.T))
    if asym > atol:
        raise ValueError(f"matrix is not symmetric (max |a_ij - a_ji| = {asym:.3e})")
    if asym > 0:
        a = 0.5 * (a + a.T)
    return a


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-triangular ``L`` with ``C = L @ L.T`` and positive diagonal."""

    lower: NDArray[np.float64]

    @property
    def n(self) -> int:
        return self.lower.shape[0]

    @cached_property
    def logdet(self) -> float:
        return 2.0 * float(np.sum(np.log(np.diag(self.lower))))

    @property
    def det(self) -> float:
        return float(np.prod(np.diag(self.lower)) ** 2)

    def reconstruct(self) -> NDArray[np.float64]:
        return self.lower @ self.lower.T

    def solve(self, b: ArrayLike) -> NDArray[np.float64]:
        b = np.asarray(b, dtype=np.float64)
        if b.shape[0] != self.n:
            raise ValueError(f"right-hand side has length {b.shape[0]}, expected {self.n}")
        y = solve_triangular(self.lower, b, lower=True, check_finite=False)
        return solve_triangular(self.lower.T, y, lower=False, check_finite=False)


def cholesky(m: ArrayLike) -> CholeskyFactor:
    """Unpivoted Cholesky factorization.

    Raises
    ------
    NotPositiveDefinite
        If some pivot is ``<= PIVOT_RTOL * max(diag(m))``.
    """
    a = as_symmetric(m)
    n = a.shape[0]
    floor = PIVOT_RTOL * max(float(np.max(np.diag(a))), 0.0)
    L = np.zeros_like(a)
    for j in range(n):
        row = L[j, :j]
        pivot = a[j, j] - row @ row
        if not pivot > floor:
            raise NotPositiveDefinite(j, float(pivot))
        L[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            L[j + 1:, j] = (a[j + 1:, j] - L[j + 1:, :j] @ row) / L[j, j]
    L.setflags(write=False)
    return CholeskyFactor(L)


def _factor(m) -> CholeskyFactor:
    return m if isinstance(m, CholeskyFactor) else cholesky(m)


def det(f: CholeskyFactor | ArrayLike) -> float:
    """Determinant ``prod(diag(L))**2``; accepts a factor or an SPD matrix."""
    return _factor(f).det


def logdet(f: CholeskyFactor | ArrayLike) -> float:
    """Natural log of the determinant, computed from the Cholesky diagonal."""
    return _factor(f).logdet


def solve(f: CholeskyFactor | ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
    """Solve ``C x = b`` given ``C`` or its Cholesky factor."""
    return _factor(f).solve(b)


def inverse(m: CholeskyFactor | ArrayLike) -> NDArray[np.float64]:
    """Inverse of an SPD matrix, symmetric by construction."""
    f = _factor(m)
    inv = f.solve(np.eye(f.n))
    return 0.5 * (inv + inv.T)


def project(basis_vectors: ArrayLike, v: ArrayLike) -> NDArray[np.float64]:
    """Orthogonal projection of ``v`` onto the span of ``basis_vectors``.

    Parameters
    ----------
    basis_vectors : (k, d) array_like
        One spanning vector per row; must be linearly independent.
    v : (d,) array_like

    Raises
    ------
    NotPositiveDefinite
        If the Gram matrix of ``basis_vectors`` is degenerate.
    """
    B = np.atleast_2d(np.asarray(basis_vectors, dtype=np.float64))
    v = np.asarray(v, dtype=np.float64)
    gram = B @ B.T
    coef = cholesky(0.5 * (gram + gram.T)).solve(B @ v)
    return B.T @ coef
