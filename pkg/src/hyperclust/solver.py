"""Projected power iterations over hypergraph scores.

Each step scores every (node, cluster) pair with a pass over the edge list
and projects the score matrix back onto balanced assignments.  The map is
deterministic (the projection breaks ties canonically), so a repeated
iterate is a genuine fixed point and iteration can stop there.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import Assignment, Hypergraph, multilinear_score, objective
from .metrics import align_and_distance
from .projection import project_balanced

__all__ = ["TraceRecord", "SolveReport", "ptpm", "theoretical_iteration_budget"]


@dataclass(frozen=True)
class TraceRecord:
    """One trajectory point; ``iteration`` 0 is the balanced starting point."""

    iteration: int
    objective: int
    distance: float | None
    wall_ms: float


@dataclass
class SolveReport:
    final: Assignment
    iterations_run: int
    trajectory: list[TraceRecord] | None
    converged_by_fixed_point: bool


def theoretical_iteration_budget(n: int) -> int:
    """Iteration cap ceil(2 ln ln n) + ceil(2 ln n / ln ln n) + 2 (natural logs)."""
    if n < 3:
        raise ValueError("budget needs n >= 3 so that ln(ln n) > 0")
    loglog = math.log(math.log(n))
    return math.ceil(2.0 * loglog) + math.ceil(2.0 * math.log(n) / loglog) + 2


def ptpm(
    g: Hypergraph,
    h0: Assignment,
    max_iters: int | None = None,
    *,
    early_stop: bool = True,
    truth: Assignment | None = None,
    record_trajectory: bool = True,
    dummy_ids=(),
) -> SolveReport:
    """Run projected power iterations from ``h0``.

    The starting labeling is first projected onto the balanced set, then up
    to ``max_iters`` score-and-project steps are applied, stopping early at
    a fixed point unless ``early_stop`` is disabled.  ``max_iters`` defaults
    to :func:`theoretical_iteration_budget` of the real node count.

    ``dummy_ids`` lists padding nodes (from non-uniform inputs): they take
    part in scoring like any node but are excluded from the balance
    constraint; their labels are refreshed by a plain row argmax with ties
    to the lowest cluster.  ``truth`` may cover all nodes or the real nodes
    only; when given, aligned distances are recorded on the real nodes.
    """
    if h0.n != g.n:
        raise ValueError(f"initial labeling covers {h0.n} nodes, hypergraph has {g.n}")
    K = h0.K
    dummy = np.array(sorted(set(int(x) for x in dummy_ids)), dtype=np.int64)
    if dummy.size and (dummy.min() < 0 or dummy.max() >= g.n):
        raise ValueError("dummy id out of range")
    real = np.setdiff1d(np.arange(g.n), dummy)
    n_real = int(real.size)
    if n_real % K:
        raise ValueError(f"K={K} must divide the real node count {n_real}")
    if max_iters is None:
        max_iters = theoretical_iteration_budget(n_real)
    if max_iters < 0:
        raise ValueError("max_iters must be nonnegative")
    if truth is not None and truth.n not in (g.n, n_real):
        raise ValueError("truth must cover all nodes or the real nodes only")

    def project_step(C):
        if dummy.size == 0:
            return project_balanced(C)
        labels = np.empty(g.n, dtype=np.int64)
        labels[real] = project_balanced(C[real]).labels
        labels[dummy] = np.argmax(C[dummy], axis=1)  # ties to lowest cluster
        return Assignment(labels, K)

    def measure(iteration, a, wall_ms):
        dist = None
        if truth is not None:
            cand = a if truth.n == g.n else Assignment(a.labels[real], K)
            _, dist = align_and_distance(cand, truth)
        return TraceRecord(iteration, objective(g, a), dist, wall_ms)

    t0 = time.perf_counter()
    current = project_step(h0.one_hot())
    records = []
    if record_trajectory:
        records.append(measure(0, current, (time.perf_counter() - t0) * 1e3))

    iterations_run = 0
    converged = False
    for t in range(1, max_iters + 1):
        t0 = time.perf_counter()
        scores = multilinear_score(g, current)
        nxt = project_step(scores)
        iterations_run = t
        unchanged = bool(np.array_equal(nxt.labels, current.labels))
        current = nxt
        if record_trajectory:
            records.append(measure(t, current, (time.perf_counter() - t0) * 1e3))
        if early_stop and unchanged:
            converged = True
            break
    return SolveReport(
        final=current,
        iterations_run=iterations_run,
        trajectory=records if record_trajectory else None,
        converged_by_fixed_point=converged,
    )
