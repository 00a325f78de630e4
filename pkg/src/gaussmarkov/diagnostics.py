"""Markov diagnostics for an arbitrary covariance matrix.

Three matrix criteria are checked, each on its own route:

* the precision matrix (numerical inverse) vanishes off the tridiagonal band;
* correlations multiply along the chain;
* regressing each coordinate on all earlier ones puts zero weight on
  everything but the immediate predecessor.

For a Gaussian vector the three are equivalent to the Markov property. For
an empirical covariance of non-Gaussian data they only speak about the
matrix, i.e. about the best linear predictors, not about conditional laws.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from numpy.typing import ArrayLike

from .linalg_core import as_symmetric, cholesky, inverse

__all__ = [
    "DEFAULT_TOL",
    "MarkovDiagnosis",
    "test_tridiagonal",
    "test_factorization",
    "test_regression",
    "diagnose",
    "regression_coefficient",
]

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class MarkovDiagnosis:
    """Outcome of the three Markov criteria on one covariance matrix."""

    tridiagonal_pass: bool
    tridiagonal_worst: float
    factorization_pass: bool
    factorization_worst: float
    regression_pass: bool
    regression_worst: float
    tolerance: float

    @property
    def all_pass(self) -> bool:
        return self.tridiagonal_pass and self.factorization_pass and self.regression_pass

    @property
    def consistent(self) -> bool:
        """True when the three verdicts agree."""
        return len({self.tridiagonal_pass, self.factorization_pass, self.regression_pass}) == 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["all_pass"] = self.all_pass
        d["consistent"] = self.consistent
        return d


def test_tridiagonal(c: ArrayLike, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Largest off-band entry of ``inv(c)``, relative to its largest entry."""
    A = inverse(as_symmetric(c))
    n = A.shape[0]
    if n < 3:
        return True, 0.0
    i, j = np.indices(A.shape)
    off_band = np.abs(A[np.abs(i - j) >= 2])
    worst = float(off_band.max() / np.max(np.abs(A)))
    return worst <= tol, worst


def test_factorization(c: ArrayLike, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Largest ``|rho_kl - prod_{j=k}^{l-1} rho_{j,j+1}|`` over ``l >= k + 2``."""
    C = as_symmetric(c)
    d = np.sqrt(np.diag(C))
    if np.any(~(d > 0)):
        raise ValueError("covariance has a non-positive variance")
    R = C / np.outer(d, d)
    n = R.shape[0]
    band = np.diag(R, 1)
    worst = 0.0
    for k in range(n - 2):
        chain = np.cumprod(band[k:])
        worst = max(worst, float(np.max(np.abs(R[k, k + 2:] - chain[1:]))))
    return worst <= tol, worst


def test_regression(c: ArrayLike, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Largest weight on non-adjacent predecessors in the forward regressions.

    For each ``l >= 2`` (zero-based) solves ``C[:l, :l] eta = C[:l, l]`` and
    records ``max |eta[:l-1]|``.
    """
    C = as_symmetric(c)
    n = C.shape[0]
    worst = 0.0
    for l in range(2, n):
        eta = cholesky(C[:l, :l]).solve(C[:l, l])
        worst = max(worst, float(np.max(np.abs(eta[:-1]))))
    return worst <= tol, worst


def diagnose(c: ArrayLike, tol: float = DEFAULT_TOL) -> MarkovDiagnosis:
    """Run all three criteria and collect the report."""
    tri_ok, tri = test_tridiagonal(c, tol)
    fac_ok, fac = test_factorization(c, tol)
    reg_ok, reg = test_regression(c, tol)
    return MarkovDiagnosis(tri_ok, tri, fac_ok, fac, reg_ok, reg, float(tol))


# not pytest tests, despite the names
for _f in (test_tridiagonal, test_factorization, test_regression):
    _f.__test__ = False
del _f


def regression_coefficient(c: ArrayLike, l: int) -> float:
    """Slope of ``E(X_l | X_{l-1})``, i.e. ``sigma_l rho_{l-1,l} / sigma_{l-1}``.

    ``l`` is zero-based and must satisfy ``1 <= l <= n - 1``.
    """
    C = as_symmetric(c)
    n = C.shape[0]
    if not 1 <= l <= n - 1:
        raise IndexError(f"l must be in [1, {n - 1}], got {l}")
    return float(C[l - 1, l] / C[l - 1, l - 1])
