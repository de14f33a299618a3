"""Permutation-invariant recovery metrics.

Two labelings describe the same partition up to renaming clusters, so every
metric here first aligns them: the K x K confusion matrix is built and the
cluster permutation maximizing the diagonal overlap is found exactly
(exhaustively for K <= 8, by an exact assignment solve beyond that).
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import Assignment
from .projection import _transport

__all__ = [
    "confusion_matrix",
    "align_and_distance",
    "misclassification_rate",
    "exact_recovery",
]

_EXHAUSTIVE_K = 8


def confusion_matrix(h: Assignment, truth: Assignment) -> np.ndarray:
    """M[k, l] = number of nodes labeled k by ``h`` and l by ``truth``."""
    if h.n != truth.n or h.K != truth.K:
        raise ValueError(
            f"shape mismatch: ({h.n}, {h.K}) vs ({truth.n}, {truth.K})"
        )
    M = np.zeros((h.K, h.K), dtype=np.int64)
    np.add.at(M, (h.labels, truth.labels), 1)
    return M


def _best_overlap(M: np.ndarray) -> tuple[tuple[int, ...], int]:
    K = M.shape[0]
    if K <= _EXHAUSTIVE_K:
        best_perm, best = None, -1
        for perm in itertools.permutations(range(K)):
            overlap = int(M[np.arange(K), perm].sum())
            if overlap > best:
                best_perm, best = perm, overlap
        return best_perm, best
    # exact K x K assignment: maximize trace overlap = min-cost with -M
    assign, _ = _transport((-M.astype(np.int64)).tolist(), K, 1)
    perm = tuple(int(a) for a in assign)
    return perm, int(M[np.arange(K), list(perm)].sum())


def align_and_distance(h: Assignment, truth: Assignment):
    """Best cluster renaming and the aligned Frobenius distance.

    Returns ``(perm, distance)`` where ``perm[k]`` is the truth cluster
    matched to cluster k of ``h`` and ``distance`` is the Frobenius norm
    between the one-hot matrices after renaming; for one-hot rows this is
    sqrt(2 * (n - overlap)).
    """
    M = confusion_matrix(h, truth)
    perm, overlap = _best_overlap(M)
    return perm, math.sqrt(2.0 * (h.n - overlap))


def misclassification_rate(h: Assignment, truth: Assignment) -> float:
    """Fraction of nodes off the best-aligned diagonal, in [0, 1]."""
    M = confusion_matrix(h, truth)
    _, overlap = _best_overlap(M)
    return (h.n - overlap) / h.n


def exact_recovery(h: Assignment, truth: Assignment) -> bool:
    """True iff the two labelings induce the same partition."""
    M = confusion_matrix(h, truth)
    _, overlap = _best_overlap(M)
    return overlap == h.n
