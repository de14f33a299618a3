"""Non-uniform hypergraphs: padding with dummy nodes.

A hypergraph mixing 2-edges and 3-edges is lifted to a 3-uniform one by
appending a shared dummy node to every 2-edge.  The solver then treats the
dummy as an ordinary node for scoring but leaves it out of the balance
constraint, so the real nodes still split into equal communities.
"""

import itertools

import numpy as np

from hyperclust import Assignment, exact_recovery, ptpm, random_init, uniformize
from hyperclust.experiments import block_truth

rng = np.random.default_rng(0)
n, K = 200, 2
truth = block_truth(n, K)

# Pairwise edges from a planted two-community graph, plus planted triples.
subsets = []
for i, j in itertools.combinations(range(n), 2):
    prob = 0.10 if truth.labels[i] == truth.labels[j] else 0.01
    if rng.random() < prob:
        subsets.append((i, j))
count2 = len(subsets)
for _ in range(600):
    k = int(rng.integers(K))
    members = rng.choice(np.flatnonzero(truth.labels == k), size=3, replace=False)
    subsets.append(tuple(members))
print(f"{count2} pairwise edges + {len(subsets) - count2} triples")

g, dummies = uniformize(subsets, d0=3, n=n)
print(f"lifted to {g.d}-uniform on {g.n} nodes; dummy ids {list(dummies)}")

# The start must label every node, dummies included.
h0 = random_init(n, K, seed=5)
h0_full = Assignment(np.concatenate([h0.labels, np.zeros(len(dummies), dtype=np.int64)]), K)

report = ptpm(g, h0_full, max_iters=10, dummy_ids=dummies, truth=truth)
real_part = Assignment(report.final.labels[:n], K)
print(f"iterations: {report.iterations_run}, distance trace:",
      [round(r.distance, 1) for r in report.trajectory])
assert exact_recovery(real_part, truth)
print("ok: recovered the two communities from the mixed-order input")
