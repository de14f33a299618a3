"""Exact Euclidean projection of a score matrix onto balanced assignments.

Maximizing ``sum_i C[i, label(i)]`` over assignments with exactly ``n/K``
nodes per cluster is equivalent to the nearest-point projection in Frobenius
norm, because the norm of every one-hot balanced matrix is the same.  The
problem is solved exactly as a transportation problem (n unit sources, K
sinks of capacity n/K) by successive shortest augmenting paths over the
cluster graph with dual potentials, which runs in O(K^2 n log n).

Ties are resolved deterministically: among all optimal assignments the
lexicographically smallest label sequence is returned (node order first,
then cluster order).  This is computed exactly from the optimal duals: an
assignment is optimal iff it is feasible and supported on arcs with zero
reduced cost, so a greedy pass with reroute checks over that support yields
the canonical optimum.  Integer score matrices are handled in exact integer
arithmetic.
"""

from __future__ import annotations

import heapq
from functools import lru_cache

import numpy as np

from .core import Assignment

__all__ = ["project_balanced", "brute_force_projection"]

# Reduced-cost tie tolerance for float inputs, relative to the largest
# magnitude entry.  Must sit well above accumulated roundoff (~1e-15) and
# well below any gap a test could distinguish.
_FLOAT_TIE_TOL = 1e-13


def project_balanced(scores) -> Assignment:
    """Balanced assignment maximizing the selected-entry sum of ``scores``.

    Parameters
    ----------
    scores : (n, K) array
        Real or integer score matrix; n must be divisible by K.  NaN or
        infinite entries are rejected.

    Returns
    -------
    Assignment
        Balanced, with the lexicographically smallest optimal label
        sequence under the fixed node/cluster ordering.
    """
    C = np.asarray(scores)
    if C.ndim != 2:
        raise ValueError("score matrix must be 2-dimensional")
    n, K = C.shape
    if K < 1 or n < 1:
        raise ValueError("score matrix must be non-empty")
    if n % K:
        raise ValueError(f"n={n} not divisible by K={K}")
    integer_mode = np.issubdtype(C.dtype, np.integer)
    if not integer_mode:
        if not np.isfinite(C).all():
            raise ValueError("score matrix contains NaN or infinite entries")
        C = C.astype(np.float64)
    else:
        C = C.astype(np.int64)
    if K == 1:
        return Assignment(np.zeros(n, dtype=np.int64), 1, balanced=True)

    m = n // K
    # transportation costs: minimize -scores
    cost = (-C).tolist()  # python ints in integer mode -> exact arithmetic
    assign, v = _transport(cost, K, m)
    u = [cost[i][assign[i]] - v[assign[i]] for i in range(n)]
    if integer_mode:
        tol = 0
    else:
        # relative to the matrix scale: an absolute floor would swallow
        # genuine gaps in small-magnitude matrices
        tol = _FLOAT_TIE_TOL * float(np.abs(C).max())
    labels = _lex_min_over_ties(cost, m, assign, u, v, tol)
    return Assignment(np.array(labels, dtype=np.int64), K, balanced=True)


def brute_force_projection(scores, max_n: int = 12) -> Assignment:
    """Exhaustive oracle for :func:`project_balanced`.

    Enumerates every balanced assignment in lexicographic label order and
    returns the first one achieving the maximum score sum, i.e. the same
    tie-break as the fast path.  Refuses n > ``max_n`` since the count is
    n! / (m!)^K.
    """
    C = np.asarray(scores)
    if C.ndim != 2:
        raise ValueError("score matrix must be 2-dimensional")
    n, K = C.shape
    if n % K:
        raise ValueError(f"n={n} not divisible by K={K}")
    if n > max_n:
        raise ValueError(f"brute force refuses n={n} > {max_n}")
    labelings = _balanced_labelings(n, K)
    totals = C[np.arange(n)[None, :], labelings].sum(axis=1)
    best = int(np.argmax(totals))  # first occurrence = lexicographically smallest
    return Assignment(labelings[best], K, balanced=True)


@lru_cache(maxsize=8)
def _balanced_labelings(n: int, K: int) -> np.ndarray:
    """All balanced label sequences for (n, K), lexicographically sorted."""
    m = n // K
    out = []
    lab = [0] * n
    caps = [m] * K

    def rec(i):
        if i == n:
            out.append(lab.copy())
            return
        for k in range(K):
            if caps[k]:
                caps[k] -= 1
                lab[i] = k
                rec(i + 1)
                caps[k] += 1

    rec(0)
    arr = np.array(out, dtype=np.int64)
    arr.flags.writeable = False
    return arr


def _transport(cost, K, m):
    """Min-cost assignment of n unit rows to K columns of capacity m.

    ``cost`` is a list of n rows (python ints or floats).  Returns
    ``(assign, v)`` where ``assign[i]`` is the column of row i and ``v`` are
    column potentials satisfying ``cost[i][l] - v[l] >= cost[i][a] - v[a]``
    for every row i assigned to column a (dual feasibility; equality on
    assigned arcs defines the row duals).

    Rows are inserted one at a time along a shortest augmenting path in the
    residual cluster graph (Dijkstra over K vertices; arc k->l realized by
    the cheapest relocatable row of column k, tracked in lazy heaps).
    """
    n = len(cost)
    v = [0] * K
    assign = [-1] * n
    counts = [0] * K
    # heaps[k][l]: (cost[j][l] - cost[j][k], j) over rows j assigned to k
    heaps = [[[] for _ in range(K)] for _ in range(K)]

    def push_row(j, k):
        cj = cost[j]
        base = cj[k]
        for l in range(K):
            if l != k:
                heapq.heappush(heaps[k][l], (cj[l] - base, j))

    for i in range(n):
        ci = cost[i]
        dist = [ci[k] - v[k] for k in range(K)]
        pred = [(-1, -1)] * K  # (source column, witness row); -1 = entry arc
        done = [False] * K
        pq = [(dist[k], k) for k in range(K)]
        heapq.heapify(pq)
        target = -1
        while pq:
            dk, k = heapq.heappop(pq)
            if done[k] or dk > dist[k]:
                continue
            done[k] = True
            if counts[k] < m:
                target = k
                break
            vk = v[k]
            for l in range(K):
                if l == k or done[l]:
                    continue
                h = heaps[k][l]
                while h and assign[h[0][1]] != k:
                    heapq.heappop(h)
                if not h:
                    continue
                nd = dk + h[0][0] + vk - v[l]
                if nd < dist[l]:
                    dist[l] = nd
                    pred[l] = (k, h[0][1])
                    heapq.heappush(pq, (nd, l))
        assert target >= 0, "augmenting path must exist while capacity remains"
        D = dist[target]
        for k in range(K):
            v[k] += min(dist[k], D) if done[k] else D
        # walk the path back to the entry column, applying relocations
        k = target
        moves = []
        while pred[k][0] != -1:
            src, wit = pred[k]
            moves.append((src, k, wit))
            k = src
        for src, dst, wit in moves:
            assign[wit] = dst
            counts[src] -= 1
            counts[dst] += 1
            push_row(wit, dst)
        assign[i] = k
        counts[k] += 1
        push_row(i, k)
    return assign, v


def _lex_min_over_ties(cost, m, assign, u, v, tol):
    """Lexicographically smallest optimum over the tight-arc support.

    Every optimal assignment is feasible and supported on arcs whose
    reduced cost ``cost[i][k] - u[i] - v[k]`` vanishes, and conversely.  A
    greedy pass finalizes nodes in order, trying clusters ascending; a
    candidate is accepted iff the remaining nodes can be rerouted inside
    the tight support (BFS over clusters through relocatable witnesses).
    """
    n = len(cost)
    K = len(v)
    carr = np.asarray(cost)
    red = carr - np.asarray(u)[:, None] - np.asarray(v)[None, :]
    tight = red <= tol
    n_opts = tight.sum(axis=1)
    cur = list(assign)
    if int(n_opts.max(initial=1)) <= 1:
        return cur  # unique support: nothing to break
    opts = [np.flatnonzero(tight[i]).tolist() for i in range(n)]
    members = [set() for _ in range(K)]  # movable (not yet finalized) nodes
    for i in range(n):
        members[cur[i]].add(i)
    for i in range(n):
        members[cur[i]].discard(i)
        for k in opts[i]:
            if k == cur[i]:
                break
            # can node i take k? only if a slot can be freed by moving
            # later nodes along tight arcs from k back to cur[i]
            goal = cur[i]
            parent = {k: None}
            frontier = [k]
            while frontier and goal not in parent:
                nxt = []
                for a in frontier:
                    for j in members[a]:
                        for b in opts[j]:
                            if b not in parent:
                                parent[b] = (a, j)
                                nxt.append(b)
                                if b == goal:
                                    break
                frontier = nxt
            if goal in parent:
                node = goal
                while parent[node] is not None:
                    a, j = parent[node]
                    members[a].discard(j)
                    members[node].add(j)
                    cur[j] = node
                    node = a
                cur[i] = k
                break
    return cur
