"""Independent reference computations used by the test-suite.

Nothing here imports the package's linear algebra: determinants come from
cofactor expansion or numpy's LU, inverses from numpy, projections from a QR
factorization, gradients from central differences.
"""

from __future__ import annotations

import itertools

import numpy as np


def cofactor_det(m) -> float:
    """Laplace expansion along the first row. Exponential; keep n small."""
    a = np.asarray(m, dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    if n == 2:
        return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1) ** j * a[0, j] * cofactor_det(minor)
    return total


def adjugate_inverse(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    n = a.shape[0]
    d = cofactor_det(a)
    adj = np.empty_like(a)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(a, i, axis=0), j, axis=1)
            adj[j, i] = (-1) ** (i + j) * cofactor_det(minor)
    return adj / d


def lu_logdet(m) -> float:
    sign, ld = np.linalg.slogdet(np.asarray(m, dtype=float))
    assert sign > 0
    return float(ld)


def qr_project(B, v) -> np.ndarray:
    Q, _ = np.linalg.qr(np.atleast_2d(B).T)
    return Q @ (Q.T @ np.asarray(v, dtype=float))


def central_difference(f, x, h=1e-6) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    grad = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h
        grad[k] = (f(x + e) - f(x - e)) / (2 * h)
    return grad


def product_rule_matrix(rho) -> np.ndarray:
    """Correlations by explicit loops over the chain (no cumprod)."""
    n = len(rho) + 1
    R = np.eye(n)
    for k in range(n):
        for l in range(k + 1, n):
            p = 1.0
            for j in range(k, l):
                p *= rho[j]
            R[k, l] = R[l, k] = p
    return R


def random_spec_arrays(rng, n, rho_max=0.95, sigma_range=(0.1, 10.0)):
    sigma = rng.uniform(*sigma_range, size=n)
    rho = rng.uniform(-rho_max, rho_max, size=n - 1)
    return sigma, rho


def random_correlation(rng, n, extra=2) -> np.ndarray:
    """Unit-diagonal SPD matrix from random Gaussian vectors (generically non-Markov)."""
    W = rng.standard_normal((n, n + extra))
    G = W @ W.T
    d = np.sqrt(np.diag(G))
    R = G / np.outer(d, d)
    np.fill_diagonal(R, 1.0)
    return R


def random_spd(rng, n, scale=1.0) -> np.ndarray:
    G = rng.standard_normal((n, n))
    return scale * (G.T @ G + n * np.eye(n))


def batched_logdet(R: np.ndarray) -> np.ndarray:
    """ln det of each matrix in a stack, ``-inf`` where not positive definite."""
    w = np.linalg.eigvalsh(R)
    out = np.full(R.shape[0], -np.inf)
    ok = w[:, 0] > 0
    out[ok] = np.sum(np.log(w[ok]), axis=1)
    return out


def grid_search_logdet(rho, free, center, step=0.05, full_lattice_max=3, chunk=200_000):
    """Best ln det of the unit-variance completion over a 0.05 lattice.

    With at most ``full_lattice_max`` free entries the whole lattice in (-1, 1)
    is scanned. Otherwise every 2-D coordinate plane through ``center`` is
    scanned on the full lattice, plus the local product lattice
    ``center + {-step, 0, step}`` in all coordinates.
    """
    base = product_rule_matrix(rho)
    axis = np.round(np.arange(-1 + step, 1 - step / 2, step), 12)
    rows, cols = np.array(free).T
    center = np.asarray(center, dtype=float)
    m = len(free)

    def evaluate(V):
        best = -np.inf
        for s in range(0, len(V), chunk):
            block = V[s:s + chunk]
            R = np.broadcast_to(base, (len(block),) + base.shape).copy()
            R[:, rows, cols] = block
            R[:, cols, rows] = block
            best = max(best, float(np.max(batched_logdet(R))))
        return best

    if m <= full_lattice_max:
        V = np.array(list(itertools.product(axis, repeat=m)))
        return evaluate(V), len(V)

    best, count = -np.inf, 0
    for a, b in itertools.combinations(range(m), 2):
        A, B = np.meshgrid(axis, axis, indexing="ij")
        V = np.tile(center, (A.size, 1))
        V[:, a] = A.ravel()
        V[:, b] = B.ravel()
        best = max(best, evaluate(V))
        count += len(V)
    offsets = np.array(list(itertools.product((-step, 0.0, step), repeat=m)))
    V = center + offsets
    best = max(best, evaluate(V))
    return best, count + len(V)


def factorization_defect(R) -> float:
    """max |rho_kl - prod of band| by explicit loops, on a correlation matrix."""
    n = R.shape[0]
    worst = 0.0
    for k in range(n):
        for l in range(k + 2, n):
            p = 1.0
            for j in range(k, l):
                p *= R[j, j + 1]
            worst = max(worst, abs(R[k, l] - p))
    return worst


def markov_corpus(seed, count=500, nmax=12, rho_max=0.95):
    """Seeded covariance matrices of Markov chains, built by the loop oracle."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(3, nmax + 1))
        sigma, rho = random_spec_arrays(rng, n, rho_max=rho_max)
        out.append(product_rule_matrix(rho) * np.outer(sigma, sigma))
    return out


def non_markov_corpus(seed, count=500, nmax=12, reject_below=1e-7):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(3, nmax + 1))
        R = random_correlation(rng, n)
        if factorization_defect(R) <= reject_below:
            continue
        sigma = rng.uniform(0.1, 10.0, size=n)
        out.append(R * np.outer(sigma, sigma))
    return out
