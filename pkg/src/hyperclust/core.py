"""Sparse symmetric uniform hypergraphs, cluster assignments, and scoring.

A d-uniform hypergraph is stored as its canonical hyperedge list, never as a
dense order-d tensor: each hyperedge is a strictly increasing d-tuple of node
ids, and the row array is unique and lexicographically sorted.  This is the
single source of truth for the implicit symmetric 0/1 adjacency tensor with
zero diagonal (an entry is 1 exactly when its d distinct indices form an
edge).

Node ids and cluster labels are 0-based everywhere in memory; the text file
formats are 1-based, and the readers/writers below are the only place that
mapping appears.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Hypergraph",
    "Assignment",
    "multilinear_score",
    "dense_multilinear_oracle",
    "objective",
    "read_hypergraph",
    "write_hypergraph",
    "read_assignment",
    "write_assignment",
]


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Symmetric d-uniform hypergraph on ``n`` nodes.

    ``edges`` has shape (E, d); rows are strictly increasing 0-based node
    ids, unique, and lexicographically sorted (canonical form).  Instances
    are immutable; all operations on them are pure functions.
    """

    n: int
    d: int
    edges: np.ndarray

    def __post_init__(self):
        n, d = int(self.n), int(self.d)
        if n < 1:
            raise ValueError("node count must be a positive integer")
        if d < 2:
            raise ValueError("hyperedge order must be an integer >= 2")
        e = np.asarray(self.edges, dtype=np.int64)
        if e.size == 0:
            e = np.empty((0, d), dtype=np.int64)
        if e.ndim != 2 or e.shape[1] != d:
            raise ValueError(f"edge array must have shape (E, {d})")
        if e.shape[0]:
            if e.min() < 0 or e.max() >= n:
                raise ValueError("node id out of range")
            if not np.all(np.diff(e, axis=1) > 0):
                raise ValueError("hyperedge members must be distinct and increasing")
            e = e[np.lexsort(e.T[::-1])]
            if np.any(np.all(e[1:] == e[:-1], axis=1)):
                raise ValueError("duplicate hyperedges")
        e.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "edges", e)

    @classmethod
    def from_edge_list(cls, n, d, edge_list):
        """Build a canonical hypergraph from an iterable of d-sets of node ids."""
        rows = []
        for edge in edge_list:
            t = tuple(sorted(int(x) for x in edge))
            if len(t) != d or len(set(t)) != d:
                raise ValueError(f"hyperedge {tuple(edge)} does not have {d} distinct members")
            rows.append(t)
        if len(set(rows)) != len(rows):
            raise ValueError("duplicate hyperedges")
        arr = np.array(sorted(rows), dtype=np.int64).reshape(len(rows), d)
        return cls(n, d, arr)

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def edge_set(self):
        """Edges as a set of tuples (convenience for tests and set algebra)."""
        return set(map(tuple, self.edges.tolist()))


@dataclass(frozen=True, eq=False)
class Assignment:
    """Labeling of ``n`` nodes into ``K`` clusters.

    ``labels[i]`` is the 0-based cluster of node ``i``.  Setting ``balanced``
    asserts that every cluster holds exactly ``n/K`` nodes (verified at
    construction); such assignments correspond to row-one-hot matrices with
    equal column sums.
    """

    labels: np.ndarray
    K: int
    balanced: bool = False

    def __post_init__(self):
        K = int(self.K)
        if K < 1:
            raise ValueError("cluster count must be positive")
        lab = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if lab.size == 0:
            raise ValueError("empty labeling")
        if lab.min() < 0 or lab.max() >= K:
            raise ValueError("label out of range")
        if self.balanced:
            if lab.size % K:
                raise ValueError("balanced assignment requires K | n")
            if not np.all(np.bincount(lab, minlength=K) == lab.size // K):
                raise ValueError("balanced flag set but cluster sizes differ")
        lab = lab.copy()
        lab.flags.writeable = False
        object.__setattr__(self, "labels", lab)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "balanced", bool(self.balanced))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    def counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.K)

    @property
    def is_balanced(self) -> bool:
        return self.n % self.K == 0 and bool(
            np.all(self.counts() == self.n // self.K)
        )

    def one_hot(self, dtype=np.int64) -> np.ndarray:
        H = np.zeros((self.n, self.K), dtype=dtype)
        H[np.arange(self.n), self.labels] = 1
        return H

    def relabel(self, perm) -> "Assignment":
        """Rename clusters: node i gets label ``perm[labels[i]]``."""
        perm = np.asarray(perm, dtype=np.int64)
        if perm.shape != (self.K,) or sorted(perm.tolist()) != list(range(self.K)):
            raise ValueError("perm must be a permutation of 0..K-1")
        return Assignment(perm[self.labels], self.K, balanced=self.balanced)


def multilinear_score(g: Hypergraph, h: Assignment) -> np.ndarray:
    """Score every (node, cluster) pair by sweeping the edge list.

    Returns the integer n x K matrix whose (i, k) entry equals (d-1)! times
    the number of hyperedges containing node i whose remaining d-1 members
    all carry label k.  Equivalent to contracting each of the d-1 trailing
    modes of the implicit adjacency tensor with the one-hot label matrix,
    but linear in the edge count (one vectorized sweep per member position)
    instead of touching n^d entries.
    """
    if h.n != g.n:
        raise ValueError(f"labeling covers {h.n} nodes, hypergraph has {g.n}")
    scores = np.zeros((g.n, h.K), dtype=np.int64)
    if g.num_edges == 0:
        return scores
    fact = math.factorial(g.d - 1)
    edge_labels = h.labels[g.edges]  # (E, d)
    for j in range(g.d):
        others = np.delete(edge_labels, j, axis=1)
        uniform = np.all(others == others[:, :1], axis=1)
        np.add.at(scores, (g.edges[uniform, j], others[uniform, 0]), fact)
    return scores


def dense_multilinear_oracle(g: Hypergraph, h: Assignment, max_n: int = 10) -> np.ndarray:
    """Reference scorer that materializes the dense adjacency tensor.

    Fills in all d! index permutations of every edge and contracts the
    trailing modes with the one-hot label matrix by a literal integer
    einsum.  Exponential in d by design; refuses n > ``max_n`` or d > 4.
    Output contract is bit-identical to :func:`multilinear_score`.
    """
    if g.n > max_n:
        raise ValueError(f"oracle refuses n={g.n} > {max_n} (dense tensor is n^d)")
    if g.d > 4:
        raise ValueError(f"oracle refuses d={g.d} > 4")
    if h.n != g.n:
        raise ValueError(f"labeling covers {h.n} nodes, hypergraph has {g.n}")
    A = np.zeros((g.n,) * g.d, dtype=np.int64)
    for edge in g.edges.tolist():
        for perm in itertools.permutations(edge):
            A[perm] = 1
    H = h.one_hot()
    letters = "abcdefgh"[: g.d]
    subscripts = letters + "," + ",".join(c + "z" for c in letters[1:]) + "->" + letters[0] + "z"
    return np.einsum(subscripts, A, *([H] * (g.d - 1)))


def objective(g: Hypergraph, h: Assignment) -> int:
    """Inner product of the adjacency tensor with the assignment's outer power.

    Equals d! times the number of hyperedges whose d members all share one
    label; this is the quantity the solver maximizes over balanced
    assignments.
    """
    if h.n != g.n:
        raise ValueError(f"labeling covers {h.n} nodes, hypergraph has {g.n}")
    if g.num_edges == 0:
        return 0
    edge_labels = h.labels[g.edges]
    mono = int(np.all(edge_labels == edge_labels[:, :1], axis=1).sum())
    return math.factorial(g.d) * mono


# --- text formats (1-based on disk, 0-based in memory) ---


def write_hypergraph(g: Hypergraph, path):
    with open(path, "w") as f:
        f.write(f"{g.n} {g.d}\n")
        for row in g.edges.tolist():
            f.write(" ".join(str(x + 1) for x in row) + "\n")


def read_hypergraph(path) -> Hypergraph:
    """Parse the edge-list format: header ``n d``, then one edge per line
    as d space-separated ascending 1-based node ids; ``#`` lines ignored."""
    header = None
    rows = []
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if header is None:
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: header must be 'n d'")
                header = (int(parts[0]), int(parts[1]))
                continue
            n, d = header
            if len(parts) != d:
                raise ValueError(f"{path}:{lineno}: expected {d} node ids")
            ids = [int(p) for p in parts]
            if any(x < 1 or x > n for x in ids):
                raise ValueError(f"{path}:{lineno}: node id out of range 1..{n}")
            rows.append(tuple(x - 1 for x in ids))
    if header is None:
        raise ValueError(f"{path}: missing header line")
    return Hypergraph.from_edge_list(header[0], header[1], rows)


def write_assignment(a: Assignment, path):
    with open(path, "w") as f:
        for lab in a.labels.tolist():
            f.write(f"{lab + 1}\n")


def read_assignment(path, K: int | None = None) -> Assignment:
    """Parse the label format: line i holds the 1-based label of node i."""
    labels = []
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            value = int(line)
            if value < 1:
                raise ValueError(f"{path}:{lineno}: labels are 1-based")
            labels.append(value - 1)
    if not labels:
        raise ValueError(f"{path}: no labels found")
    arr = np.array(labels, dtype=np.int64)
    k = int(arr.max()) + 1 if K is None else int(K)
    a = Assignment(arr, k)
    if a.is_balanced:
        a = Assignment(arr, k, balanced=True)
    return a
