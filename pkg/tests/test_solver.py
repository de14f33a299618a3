import itertools
import math

import numpy as np
import pytest

from hyperclust.core import Assignment, Hypergraph, objective
from hyperclust.experiments import block_truth
from hyperclust.initializers import corrupt
from hyperclust.metrics import exact_recovery
from hyperclust.projection import _balanced_labelings
from hyperclust.sampler import LogRegimeParams, sample, to_probabilities, uniformize
from hyperclust.solver import ptpm, theoretical_iteration_budget


def planted_instance(n, d, K, alpha, beta, seed):
    params = to_probabilities(LogRegimeParams(n, d, K, alpha, beta))
    truth = block_truth(n, K)
    return sample(params, truth, seed), truth


# --- iteration budget ---


def test_budget_known_value():
    # ceil(2 ln ln 210) + ceil(2 ln 210 / ln ln 210) + 2 = 4 + 7 + 2
    assert theoretical_iteration_budget(210) == 13


def test_budget_boundary_and_monotonicity():
    assert theoretical_iteration_budget(3) > 0
    assert theoretical_iteration_budget(10**6) > theoretical_iteration_budget(10**3)
    with pytest.raises(ValueError):
        theoretical_iteration_budget(2)


def test_budget_matches_direct_formula():
    for n in [3, 10, 120, 480, 10**5]:
        loglog = math.log(math.log(n))
        expected = math.ceil(2 * loglog) + math.ceil(2 * math.log(n) / loglog) + 2
        assert theoretical_iteration_budget(n) == expected


# --- basic solve behavior ---


def test_zero_iterations_returns_balanced_start():
    g = Hypergraph.from_edge_list(6, 3, [(0, 1, 2)])
    h0 = block_truth(6, 2)
    report = ptpm(g, h0, 0)
    assert report.iterations_run == 0
    assert report.final.labels.tolist() == h0.labels.tolist()
    assert not report.converged_by_fixed_point


def test_unbalanced_start_is_projected_first():
    g = Hypergraph(4, 3, np.empty((0, 3), dtype=np.int64))
    h0 = Assignment(np.array([0, 0, 0, 1]), 2)
    report = ptpm(g, h0, 0)
    assert report.final.is_balanced


def test_truth_start_is_a_fixed_point():
    hits = 0
    for seed in range(50):
        g, truth = planted_instance(120, 3, 2, 60.0, 4.0, seed)
        report = ptpm(g, truth, truth=truth)
        if (
            report.iterations_run == 1
            and report.converged_by_fixed_point
            and exact_recovery(report.final, truth)
        ):
            hits += 1
    assert hits >= 48


def test_tiny_instance_exhaustive_basin():
    # two monochromatic triples; any start with >= 2 correct nodes per
    # cluster reaches the planted partition within 2 iterations
    g = Hypergraph.from_edge_list(6, 3, [(0, 1, 2), (3, 4, 5)])
    truth = block_truth(6, 2)
    for lab in _balanced_labelings(6, 2):
        h0 = Assignment(lab, 2, balanced=True)
        agree = max(
            (lab == truth.labels).sum(),
            (lab == 1 - truth.labels).sum(),
        )
        report = ptpm(g, h0, 2)
        if agree >= 4:  # at least 2 correctly placed nodes per cluster
            assert exact_recovery(report.final, truth)
            assert report.iterations_run <= 2


def test_fixed_point_soundness():
    g, truth = planted_instance(60, 3, 2, 50.0, 2.0, 3)
    report = ptpm(g, corrupt(truth, 3, 1))
    assert report.converged_by_fixed_point
    again = ptpm(g, report.final, 1)
    assert again.final.labels.tolist() == report.final.labels.tolist()


def test_trajectory_is_balanced_and_verbatim():
    g, truth = planted_instance(60, 3, 2, 40.0, 4.0, 7)
    report = ptpm(g, corrupt(truth, 5, 2), 8, truth=truth, early_stop=False)
    assert report.iterations_run == 8
    assert len(report.trajectory) == 9  # start plus one record per iteration
    for rec in report.trajectory:
        assert rec.objective % math.factorial(3) == 0
        assert rec.distance is not None and rec.distance >= 0
    assert objective(g, report.final) == report.trajectory[-1].objective
    assert report.final.is_balanced


def test_early_stop_off_runs_full_budget():
    g, truth = planted_instance(30, 3, 2, 30.0, 2.0, 1)
    full = ptpm(g, truth, 6, early_stop=False)
    assert full.iterations_run == 6
    assert not full.converged_by_fixed_point


def test_label_permutation_equivariance():
    # relabeling the start relabels every iterate of the trajectory (no
    # projection ties occur on this instance)
    g, truth = planted_instance(60, 3, 2, 50.0, 2.0, 11)
    h0 = corrupt(truth, 4, 5)
    for t in range(1, 6):
        base = ptpm(g, h0, t, early_stop=False)
        flipped = ptpm(g, h0.relabel([1, 0]), t, early_stop=False)
        assert flipped.final.labels.tolist() == (1 - base.final.labels).tolist()


def test_validation_errors():
    g = Hypergraph.from_edge_list(6, 3, [(0, 1, 2)])
    with pytest.raises(ValueError):
        ptpm(g, Assignment(np.array([0, 1, 0]), 2))  # wrong length
    with pytest.raises(ValueError):
        ptpm(g, Assignment(np.zeros(6, dtype=np.int64), 5))  # K does not divide n
    with pytest.raises(ValueError):
        ptpm(g, block_truth(6, 2), -1)


# --- non-uniform inputs via dummy nodes ---


def test_dummy_nodes_excluded_from_balance():
    # mixed 2- and 3-edges on a planted two-community graph
    rng = np.random.default_rng(21)
    n, K = 40, 2
    truth = block_truth(n, K)
    subsets = []
    for c in itertools.combinations(range(n), 2):
        prob = 0.4 if truth.labels[c[0]] == truth.labels[c[1]] else 0.02
        if rng.random() < prob:
            subsets.append(c)
    for c in itertools.combinations(range(n), 3):
        lab = truth.labels[list(c)]
        prob = 0.05 if (lab == lab[0]).all() else 0.002
        if rng.random() < prob:
            subsets.append(c)
    g, dummies = uniformize(subsets, 3, n)
    assert dummies == (n,)
    h0 = Assignment(np.concatenate([corrupt(truth, 4, 3).labels, [0]]), K)
    report = ptpm(g, h0, 10, dummy_ids=dummies, truth=truth)
    real_final = Assignment(report.final.labels[:n], K)
    assert real_final.is_balanced
    assert exact_recovery(real_final, truth)
    assert report.trajectory[-1].distance == 0.0
