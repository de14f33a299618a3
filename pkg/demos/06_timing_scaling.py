"""Per-iteration cost as the instance grows.

One solver iteration is a pass over the edge list plus a balanced
projection, so its cost should grow roughly like n log n at fixed
(alpha, beta).  Measures the per-iteration wall time at n = 120, 240, 480
and fits the growth exponent in log-log coordinates.
"""

import numpy as np

from hyperclust.experiments import timing_benchmark

sizes = [120, 240, 480]
params = [(n, 3, 2, 33.0, 8.0) for n in sizes]

# min over repeats rejects scheduler noise
floor = None
for rep in range(3):
    results = timing_benchmark(params, iters=10, base_seed=rep)
    cur = np.array([r["per_iter_ms"] for r in results])
    floor = cur if floor is None else np.minimum(floor, cur)
    if rep == 0:
        for r in results:
            print(f"n={r['n']:>4} edges={r['edges']:>6} per_iter_ms={r['per_iter_ms']:.2f}")

exponent = np.polyfit(np.log(sizes), np.log(floor), 1)[0]
print(f"fitted growth exponent: {exponent:.2f} (near-linear expected)")
