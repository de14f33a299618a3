"""Starting assignments for the iterative solver.

Three strategies: projecting a random Gaussian matrix onto the balanced set,
spectral clustering of the pairwise co-occurrence matrix, and controlled
corruption of a known ground truth (for experiments that need an initial
point at a prescribed distance).  All of them emit balanced assignments and
are deterministic per seed.
"""

from __future__ import annotations

import warnings

import numpy as np

from .core import Assignment, Hypergraph
from .projection import project_balanced

__all__ = [
    "random_init",
    "spectral_init",
    "corrupt",
    "similarity_matrix",
    "EigensolverError",
]

_MASK64 = (1 << 64) - 1


class EigensolverError(RuntimeError):
    """Raised when the block power iteration fails to reach tolerance.

    Carries the iteration count, the final residual, and the best-effort
    Ritz basis reached at the cap (``best_basis``).
    """

    def __init__(self, iterations, residual, tol, best_basis=None):
        super().__init__(
            f"eigensolver did not converge: residual {residual:.3e} > tol {tol:.1e} "
            f"after {iterations} iterations"
        )
        self.iterations = iterations
        self.residual = residual
        self.best_basis = best_basis


def random_init(n: int, K: int, seed: int) -> Assignment:
    """Balanced projection of an n x K matrix of independent standard normals."""
    if n % K:
        raise ValueError(f"K={K} must divide n={n}")
    rng = np.random.default_rng(int(seed) & _MASK64)
    return project_balanced(rng.standard_normal((n, K)))


def similarity_matrix(g: Hypergraph) -> np.ndarray:
    """W[i, j] = number of hyperedges containing both i and j; zero diagonal."""
    W = np.zeros((g.n, g.n), dtype=np.int64)
    for a in range(g.d):
        for b in range(a + 1, g.d):
            np.add.at(W, (g.edges[:, a], g.edges[:, b]), 1)
            np.add.at(W, (g.edges[:, b], g.edges[:, a]), 1)
    return W


def spectral_init(g: Hypergraph, K: int, seed: int, *, strict: bool = True) -> Assignment:
    """Cluster the rows of the top-K eigenvector matrix of the co-occurrence
    matrix with k-means, then balance the labeling by projection.

    With ``strict`` (the default) eigensolver non-convergence raises; with
    ``strict=False`` the best basis reached at the iteration cap is used
    with a warning.  The latter suits grid sweeps that must traverse
    no-signal cells, where the trailing eigengap is genuinely degenerate
    and any basis of the wobbling subspace is as informative as another.
    """
    if g.n % K:
        raise ValueError(f"K={K} must divide n={g.n}")
    rng = np.random.default_rng(int(seed) & _MASK64)
    W = similarity_matrix(g)
    try:
        vecs = _top_eigenvectors(W, K, rng)
    except EigensolverError as err:
        if strict:
            raise
        warnings.warn("eigensolver hit its iteration cap; using the capped basis")
        vecs = err.best_basis
    labels = _kmeans(vecs, K, rng)
    rough = Assignment(labels, K)
    return project_balanced(rough.one_hot())


def corrupt(ground_truth: Assignment, swaps: int, seed: int) -> Assignment:
    """Exchange the labels of ``swaps`` disjoint cross-cluster node pairs.

    Every touched node ends up in a different cluster and no node is
    touched twice, so the unaligned Frobenius distance to the ground truth
    is exactly 2 * sqrt(swaps) while balance is preserved.  Pairs are drawn
    uniformly among the choices that keep the remaining exchanges feasible.
    """
    if not ground_truth.is_balanced:
        raise ValueError("ground truth must be balanced")
    n, K = ground_truth.n, ground_truth.K
    if swaps < 0 or 2 * swaps > n:
        raise ValueError(f"swaps={swaps} needs 2*swaps <= n={n}")
    rng = np.random.default_rng(int(seed) & _MASK64)
    labels = ground_truth.labels.copy()
    untouched = list(range(n))
    for remaining in range(swaps, 0, -1):
        while True:
            i, j = rng.integers(0, len(untouched), size=2)
            a, b = untouched[int(i)], untouched[int(j)]
            if labels[a] == labels[b]:
                continue
            counts = np.bincount(labels[untouched], minlength=K)
            counts[labels[a]] -= 1
            counts[labels[b]] -= 1
            total = counts.sum()
            # r-1 more pairs need 2(r-1) nodes with no cluster majority
            if total >= 2 * (remaining - 1) and counts.max() <= total - (remaining - 1):
                break
        labels[a], labels[b] = labels[b], labels[a]
        for node in sorted((int(i), int(j)), reverse=True):
            untouched.pop(node)
    return Assignment(labels, K, balanced=True)


def _top_eigenvectors(W, K, rng, tol=1e-8, max_iter=1000):
    """Orthogonal (block power) iteration for the top-K eigenvectors.

    W is shifted by (max row sum) * I so the spectrum is nonnegative and the
    algebraically largest eigenvalues dominate in magnitude.  Convergence is
    declared when the invariant-subspace residual ||M Q - Q (Q^T M Q)||_F
    drops below ``tol`` relative to the shift scale.
    """
    n = W.shape[0]
    shift = max(float(W.sum(axis=1).max(initial=0)), 1.0)
    M = W.astype(np.float64)
    M[np.diag_indices(n)] += shift
    Q, _ = np.linalg.qr(rng.standard_normal((n, K)))
    residual = np.inf
    for it in range(1, max_iter + 1):
        Z = M @ Q
        Q, _ = np.linalg.qr(Z)
        MQ = M @ Q
        B = Q.T @ MQ
        residual = float(np.linalg.norm(MQ - Q @ B) / shift)
        if residual <= tol:
            _, V = np.linalg.eigh(B)
            return Q @ V[:, ::-1]  # descending eigenvalue order
    _, V = np.linalg.eigh(B)
    raise EigensolverError(max_iter, residual, tol, best_basis=Q @ V[:, ::-1])


def _kmeans(X, K, rng, restarts=20, iters=100):
    """k-means with k-means++ seeding, best of ``restarts`` by objective."""
    n = X.shape[0]
    best_labels, best_obj = None, np.inf
    for _ in range(restarts):
        centers = _kmeanspp(X, K, rng)
        labels = np.zeros(n, dtype=np.int64)
        for _ in range(iters):
            d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            new_labels = d2.argmin(axis=1)
            for k in range(K):
                mask = new_labels == k
                if mask.any():
                    centers[k] = X[mask].mean(axis=0)
                else:
                    # resurrect an empty cluster at the worst-fit point
                    centers[k] = X[int(d2.min(axis=1).argmax())]
            if np.array_equal(new_labels, labels):
                labels = new_labels
                break
            labels = new_labels
        obj = float(((X - centers[labels]) ** 2).sum())
        if obj < best_obj:
            best_labels, best_obj = labels, obj
    return best_labels


def _kmeanspp(X, K, rng):
    n = X.shape[0]
    centers = np.empty((K, X.shape[1]), dtype=np.float64)
    centers[0] = X[int(rng.integers(n))]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for k in range(1, K):
        total = d2.sum()
        if total <= 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[k] = X[idx]
        d2 = np.minimum(d2, ((X - centers[k]) ** 2).sum(axis=1))
    return centers
