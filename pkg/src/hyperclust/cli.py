"""Command-line interface.

Subcommands: sample, solve, score, phase, converge, bench, uci.  Shared
flags: ``--seed``, ``--threads`` (falling back to the HYPERCLUST_THREADS
environment variable), ``--config`` (a flat ``key = value`` file mirroring
the long flag names; explicit flags win), ``--out``.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import (
    Assignment,
    objective,
    read_assignment,
    read_hypergraph,
    write_assignment,
    write_hypergraph,
)
from .experiments import (
    GridConfig,
    convergence_trace,
    make_initializer,
    mix_seed,
    phase_transition,
    shuffled_truth,
    timing_benchmark,
    uci_votes_pipeline,
    write_csv,
)
from .metrics import align_and_distance, exact_recovery, misclassification_rate
from .sampler import LogRegimeParams, ModelParams, sample, to_probabilities
from .solver import ptpm


def load_config(path):
    """Parse a flat ``key = value`` file; '#' starts a comment."""
    values = {}
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


class _Resolver:
    """Merge CLI args, config-file values, and defaults (in that order)."""

    def __init__(self, args):
        self.args = vars(args)
        self.config = load_config(args.config) if getattr(args, "config", None) else {}

    def get(self, key, default=None, cast=str):
        cli = self.args.get(key)
        if cli is not None:
            return cli
        if key in self.config:
            raw = self.config[key]
            if cast is bool:
                return raw.lower() in ("1", "true", "yes")
            return cast(raw)
        return default

    def require(self, key, cast=str):
        value = self.get(key, None, cast)
        if value is None:
            raise SystemExit(f"missing required option --{key.replace('_', '-')}")
        return value


def _threads(res):
    value = res.get("threads")
    if value is not None:
        return int(value)
    env = os.environ.get("HYPERCLUST_THREADS")
    return int(env) if env else 1


def _resolve_probabilities(res):
    n = int(res.require("n", int))
    d = int(res.get("d", 3, int))
    K = int(res.require("k", int))
    p, q = res.get("p", cast=float), res.get("q", cast=float)
    alpha, beta = res.get("alpha", cast=float), res.get("beta", cast=float)
    if p is not None or q is not None:
        if p is None or q is None:
            raise SystemExit("--p and --q must be given together")
        return ModelParams(n, d, K, float(p), float(q))
    if alpha is None or beta is None:
        raise SystemExit("give either --p/--q or --alpha/--beta")
    return to_probabilities(LogRegimeParams(n, d, K, float(alpha), float(beta)))


def cmd_sample(args):
    res = _Resolver(args)
    params = _resolve_probabilities(res)
    seed = int(res.get("seed", 0, int))
    truth = shuffled_truth(params.n, params.K, mix_seed(seed, 2))
    g = sample(params, truth, seed)
    out = res.require("out")
    write_hypergraph(g, out)
    truth_out = res.get("truth_out")
    if truth_out:
        write_assignment(truth, truth_out)
    print(f"wrote {g.num_edges} hyperedges to {out}")
    return 0


def _initial_assignment(g, K, init_name, truth, seed):
    initializer = make_initializer(init_name)
    return initializer(g, K, truth, seed)


def cmd_solve(args):
    res = _Resolver(args)
    g = read_hypergraph(res.require("graph"))
    K = int(res.require("k", int))
    seed = int(res.get("seed", 0, int))
    truth_path = res.get("truth")
    truth = read_assignment(truth_path, K) if truth_path else None
    init_name = res.get("init", "random")
    h0 = _initial_assignment(g, K, init_name, truth, mix_seed(seed, 1))
    max_iters = res.get("max_iters", cast=int)
    report = ptpm(
        g,
        h0,
        int(max_iters) if max_iters is not None else None,
        early_stop=not res.get("no_early_stop", False, bool),
        truth=truth,
    )
    out = res.get("out")
    if out:
        write_assignment(report.final, out)
    trace = res.get("trace")
    if trace and report.trajectory:
        rows = [
            (rec.iteration, rec.objective, rec.distance, rec.wall_ms)
            for rec in report.trajectory
        ]
        write_csv(trace, ["iteration", "objective", "distance", "wall_ms"], rows)
    line = (
        f"iterations={report.iterations_run} fixed_point={int(report.converged_by_fixed_point)} "
        f"objective={objective(g, report.final)}"
    )
    if truth is not None:
        _, dist = align_and_distance(report.final, truth)
        line += f" distance={dist!r} misclassification={misclassification_rate(report.final, truth)!r}"
    print(line)
    return 0


def cmd_score(args):
    res = _Resolver(args)
    pred = read_assignment(res.require("pred"))
    truth_raw = read_assignment(res.require("truth"))
    K = max(pred.K, truth_raw.K)
    pred = Assignment(pred.labels, K)
    truth = Assignment(truth_raw.labels, K)
    _, dist = align_and_distance(pred, truth)
    rate = misclassification_rate(pred, truth)
    exact = exact_recovery(pred, truth)
    print("distance,misclassification,exact")
    print(f"{dist!r},{rate!r},{int(exact)}")
    return 0


def _parse_range(text):
    parts = [float(x) for x in text.split(":")]
    if len(parts) != 3:
        raise SystemExit("ranges use start:stop:step")
    return tuple(parts)


def cmd_phase(args):
    res = _Resolver(args)
    cfg = GridConfig.from_ranges(
        int(res.require("n", int)),
        int(res.get("d", 3, int)),
        int(res.require("k", int)),
        _parse_range(res.require("alpha_range")),
        _parse_range(res.require("beta_range")),
        trials=int(res.get("trials", 5, int)),
        init=res.get("init", "spectral"),
        max_iters=res.get("max_iters", cast=int),
        base_seed=int(res.get("seed", 0, int)),
        threads=_threads(res),
    )
    out = res.require("out")
    rows, ratios = phase_transition(cfg, out)
    done = sum(1 for r in rows if not r.skipped)
    print(f"ran {done} trials over {len(cfg.alphas) * len(cfg.betas)} cells -> {out}")
    return 0


def cmd_converge(args):
    res = _Resolver(args)
    traces = convergence_trace(
        int(res.require("n", int)),
        int(res.get("d", 3, int)),
        int(res.require("k", int)),
        float(res.require("alpha", float)),
        float(res.require("beta", float)),
        restarts=int(res.get("restarts", 8, int)),
        max_iters=int(res.get("max_iters", 30, int)),
        base_seed=int(res.get("seed", 0, int)),
        out=res.require("out"),
    )
    recovered = sum(1 for t in traces if t[-1].distance == 0.0)
    print(f"{recovered}/{len(traces)} restarts reached the planted partition")
    return 0


def cmd_bench(args):
    res = _Resolver(args)
    sizes = [int(x) for x in res.require("sizes").split(",")]
    d = int(res.get("d", 3, int))
    K = int(res.require("k", int))
    alpha = float(res.require("alpha", float))
    beta = float(res.require("beta", float))
    results = timing_benchmark(
        [(n, d, K, alpha, beta) for n in sizes],
        iters=int(res.get("iters", 10, int)),
        base_seed=int(res.get("seed", 0, int)),
        out=res.require("out"),
    )
    for r in results:
        print(f"n={r['n']} edges={r['edges']} per_iter_ms={r['per_iter_ms']:.3f}")
    return 0


def cmd_uci(args):
    res = _Resolver(args)
    columns = tuple(int(x) for x in res.get("columns", "4,5,12,15").split(","))
    g, truth, row = uci_votes_pipeline(
        res.require("data"),
        columns=columns,
        edge_prob=float(res.get("edge_prob", 0.05, float)),
        seed=int(res.get("seed", 0, int)),
        out=res.get("out"),
        restarts=int(res.get("restarts", 10, int)),
        max_iters=int(res.get("max_iters", 20, int)),
        per_party=int(res.get("per_party", 168, int)),
    )
    print(
        f"edges={g.num_edges} misclassification={row.misclassification!r} "
        f"iterations={row.iterations_run}"
    )
    return 0


def _add_common(p):
    p.add_argument("--seed", type=int, help="base 64-bit seed (default 0)")
    p.add_argument("--threads", type=int, help="worker count (HYPERCLUST_THREADS fallback)")
    p.add_argument("--config", help="flat key = value config file; flags override")
    p.add_argument("--out", help="output path")


_RESULT_COLUMNS = "alpha,beta,trial,seed,success,iterations_run,misclassification,wall_ms,skipped"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hyperclust",
        description="Community recovery on uniform hypergraphs via projected power iterations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a planted-partition hypergraph")
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--truth-out", dest="truth_out", help="also write the planted labels")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser(
        "solve",
        help="recover communities from a hypergraph file",
        epilog="--trace CSV columns: iteration,objective,distance,wall_ms",
    )
    _add_common(p)
    p.add_argument("--graph", help="hypergraph file")
    p.add_argument("--k", type=int)
    p.add_argument("--init", help="random | spectral | corrupt:<swaps>")
    p.add_argument("--max-iters", dest="max_iters", type=int)
    p.add_argument("--truth", help="labels file; enables distance reporting")
    p.add_argument("--trace", help="per-iteration CSV output")
    p.add_argument("--no-early-stop", dest="no_early_stop", action="store_const", const=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "score",
        help="compare two labelings",
        epilog="prints one CSV row: distance,misclassification,exact",
    )
    _add_common(p)
    p.add_argument("--pred", help="predicted labels file")
    p.add_argument("--truth", help="reference labels file")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser(
        "phase",
        help="success-ratio grid over (alpha, beta)",
        epilog=f"raw CSV columns: {_RESULT_COLUMNS}; also writes *_ratio.csv "
        "(alpha rows x beta columns) and *_threshold.csv (alpha,beta)",
    )
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--alpha-range", dest="alpha_range", help="start:stop:step")
    p.add_argument("--beta-range", dest="beta_range", help="start:stop:step")
    p.add_argument("--trials", type=int)
    p.add_argument("--init", help="random | spectral | corrupt:<swaps>")
    p.add_argument("--max-iters", dest="max_iters", type=int)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser(
        "converge",
        help="distance trajectories of random restarts",
        epilog="CSV columns: restart,iteration,distance,objective,wall_ms",
    )
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--restarts", type=int)
    p.add_argument("--max-iters", dest="max_iters", type=int)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser(
        "bench",
        help="per-iteration timing across sizes",
        epilog="CSV columns: n,d,K,alpha,beta,edges,iterations,total_ms,per_iter_ms",
    )
    _add_common(p)
    p.add_argument("--sizes", help="comma-separated node counts")
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--iters", type=int)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser(
        "uci",
        help="voting-records pipeline",
        epilog=f"CSV columns: {_RESULT_COLUMNS}",
    )
    _add_common(p)
    p.add_argument("--data", help="raw comma-separated voting file")
    p.add_argument("--columns", help="1-based issue columns, comma-separated")
    p.add_argument("--edge-prob", dest="edge_prob", type=float)
    p.add_argument("--restarts", type=int)
    p.add_argument("--max-iters", dest="max_iters", type=int)
    p.add_argument("--per-party", dest="per_party", type=int)
    p.set_defaults(func=cmd_uci)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
