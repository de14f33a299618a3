import csv

import numpy as np
import pytest

from hyperclust.cli import load_config, main
from hyperclust.core import read_assignment, read_hypergraph


def run(capsys, *argv):
    code = main(list(argv))
    assert code == 0
    return capsys.readouterr().out


def test_sample_solve_score_pipeline(tmp_path, capsys):
    g_path, t_path = str(tmp_path / "g.txt"), str(tmp_path / "t.txt")
    out = run(
        capsys,
        "sample",
        "--n", "30", "--d", "3", "--k", "2",
        "--alpha", "45", "--beta", "2",
        "--seed", "3",
        "--out", g_path,
        "--truth-out", t_path,
    )
    assert "hyperedges" in out
    g = read_hypergraph(g_path)
    assert g.n == 30 and g.d == 3

    pred_path, trace_path = str(tmp_path / "pred.txt"), str(tmp_path / "trace.csv")
    out = run(
        capsys,
        "solve",
        "--graph", g_path, "--k", "2",
        "--init", "spectral", "--seed", "1",
        "--truth", t_path,
        "--out", pred_path,
        "--trace", trace_path,
    )
    assert "iterations=" in out and "distance=" in out
    pred = read_assignment(pred_path)
    assert pred.is_balanced
    with open(trace_path) as f:
        rows = list(csv.DictReader(f))
    assert rows[0]["iteration"] == "0"

    out = run(capsys, "score", "--pred", pred_path, "--truth", t_path)
    lines = out.strip().splitlines()
    assert lines[0] == "distance,misclassification,exact"
    assert len(lines[1].split(",")) == 3


def test_sample_with_raw_probabilities(tmp_path, capsys):
    g_path = str(tmp_path / "g.txt")
    run(
        capsys,
        "sample",
        "--n", "12", "--d", "2", "--k", "2",
        "--p", "1.0", "--q", "0.0",
        "--out", g_path,
    )
    g = read_hypergraph(g_path)
    assert g.num_edges == 2 * 15  # both within-community cliques


def test_solve_deterministic_per_seed(tmp_path, capsys):
    g_path = str(tmp_path / "g.txt")
    run(capsys, "sample", "--n", "20", "--d", "3", "--k", "2",
        "--alpha", "40", "--beta", "4", "--seed", "8", "--out", g_path)
    a_path, b_path = str(tmp_path / "a.txt"), str(tmp_path / "b.txt")
    run(capsys, "solve", "--graph", g_path, "--k", "2", "--seed", "5", "--out", a_path)
    run(capsys, "solve", "--graph", g_path, "--k", "2", "--seed", "5", "--out", b_path)
    assert open(a_path).read() == open(b_path).read()


def test_phase_subcommand(tmp_path, capsys):
    out_path = str(tmp_path / "phase.csv")
    out = run(
        capsys,
        "phase",
        "--n", "20", "--d", "3", "--k", "2",
        "--alpha-range", "10:40:30",
        "--beta-range", "2:2:1",
        "--trials", "2",
        "--init", "corrupt:1",
        "--seed", "4",
        "--out", out_path,
    )
    assert "cells" in out
    with open(out_path) as f:
        assert len(list(csv.DictReader(f))) == 4


def test_converge_and_bench_subcommands(tmp_path, capsys):
    conv = str(tmp_path / "conv.csv")
    out = run(capsys, "converge", "--n", "20", "--k", "2",
              "--alpha", "45", "--beta", "2", "--restarts", "2", "--seed", "1",
              "--out", conv)
    assert "restarts" in out
    bench = str(tmp_path / "bench.csv")
    out = run(capsys, "bench", "--sizes", "20,40", "--k", "2",
              "--alpha", "33", "--beta", "8", "--iters", "2", "--seed", "1",
              "--out", bench)
    assert "per_iter_ms" in out
    with open(bench) as f:
        assert len(list(csv.DictReader(f))) == 2


def test_uci_subcommand(tmp_path, capsys):
    votes = tmp_path / "votes.data"
    rng = np.random.default_rng(0)
    rows = []
    for party, base in (("republican", "y"), ("democrat", "n")):
        flip = "n" if base == "y" else "y"
        for _ in range(10):
            rows.append([party] + [flip if rng.random() < 0.1 else base for _ in range(16)])
    votes.write_text("\n".join(",".join(r) for r in rows) + "\n")
    out = run(
        capsys,
        "uci",
        "--data", str(votes),
        "--columns", "1,2,3",
        "--edge-prob", "0.2",
        "--per-party", "10",
        "--seed", "2",
        "--out", str(tmp_path / "uci.csv"),
    )
    assert "misclassification=" in out


def test_config_file_merging(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 12\nd = 2\nk = 2\np = 1.0\nq = 0.0\n# comment\n")
    g_path = str(tmp_path / "g.txt")
    run(capsys, "sample", "--config", str(cfg), "--out", g_path)
    assert read_hypergraph(g_path).num_edges == 2 * 15
    # explicit flags override config values
    run(capsys, "sample", "--config", str(cfg), "--n", "8", "--out", g_path)
    assert read_hypergraph(g_path).n == 8


def test_load_config_rejects_garbage(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("this is not a pair\n")
    with pytest.raises(ValueError):
        load_config(str(cfg))


def test_missing_required_flag(tmp_path):
    with pytest.raises(SystemExit):
        main(["sample", "--n", "10", "--k", "2", "--p", "0.5", "--q", "0.1"])


def test_library_errors_exit_cleanly(tmp_path, capsys):
    # K does not divide n: surfaced as a message, not a traceback
    code = main(["sample", "--n", "11", "--k", "2", "--p", "0.5", "--q", "0.1",
                 "--out", str(tmp_path / "g.txt")])
    assert code == 2
    assert "error:" in capsys.readouterr().err
    code = main(["solve", "--graph", str(tmp_path / "missing.txt"), "--k", "2"])
    assert code == 2


def test_threads_env_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HYPERCLUST_THREADS", "2")
    out_path = str(tmp_path / "phase.csv")
    run(
        capsys,
        "phase",
        "--n", "12", "--d", "3", "--k", "2",
        "--alpha-range", "20:20:1",
        "--beta-range", "2:2:1",
        "--trials", "2",
        "--init", "corrupt:1",
        "--seed", "1",
        "--out", out_path,
    )
    with open(out_path) as f:
        assert len(list(csv.DictReader(f))) == 2
