import itertools
import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from workbench.clustering import (ALGORITHMS, ClusterParams, ClusterReport,
                                  ReportCluster, aggregate, derive_seed,
                                  dumps_report, farthest_first, gmm_em,
                                  granularity_to_n, kmeans, loads_report,
                                  proximity, run_repeated, suggest)
from workbench.clustering.consensus import single_run, splitmix64
from workbench.errors import (BadGranularity, ReportFormatError,
                              TooFewPoints, UnknownLemma)
from workbench.features import FeatureTable

LINE = np.array([[0.0], [0.1], [10.0], [10.1]])


def sse(X, labels):
    return sum(((X[labels == c] - X[labels == c].mean(axis=0)) ** 2).sum() for c in set(labels))


def brute_force_optimum(X, n):
    # oracle: every labelling into exactly n non-empty groups
    best = np.inf
    for labels in itertools.product(range(n), repeat=len(X)):
        labels = np.array(labels)
        if len(set(labels)) == n:
            best = min(best, sse(X, labels))
    return best


def groups(part):
    return sorted(tuple(c.tolist()) for c in part.clusters())


def table(X, prefix="l"):
    return FeatureTable([f"{prefix}{i}" for i in range(len(X))], np.asarray(X, dtype=float))


# granularity

@pytest.mark.parametrize("L,g,n", [(720, 1, 72), (720, 2, 80), (720, 3, 90), (720, 4, 102),
                                   (720, 5, 120), (6, 5, 1), (10, 1, 1), (120, 3, 15)])
def test_granularity_to_n(L, g, n):
    assert granularity_to_n(L, g) == n


@given(st.integers(1, 5000))
def test_granularity_monotone(L):
    ns = [granularity_to_n(L, g) for g in range(1, 6)]
    assert ns == sorted(ns) and ns[0] >= 1


@pytest.mark.parametrize("g", [0, 6, 7, -1, 2.5, True])
def test_bad_granularity(g):
    with pytest.raises(BadGranularity):
        granularity_to_n(100, g)


# proximity

def test_proximity_examples():
    assert proximity([[3.0, 4.0]]) == 1.0
    assert proximity([[1.0, 1.0], [1.0, 1.0]]) == 1.0
    assert proximity([[0.0, 0.0], [1.0, 0.0]]) == 0.5
    # three points: distances 1, 1, 2 -> mean 4/3
    assert proximity([[0.0], [1.0], [2.0]]) == pytest.approx(3 / 7)


# k-means

def test_brute_force_oracle_on_line():
    best = brute_force_optimum(LINE, 2)
    assert sse(LINE, np.array([0, 0, 1, 1])) == pytest.approx(best)


@pytest.mark.parametrize("init", ["pp", "random"])
def test_kmeans_line_example(init):
    for seed in range(10):
        part = kmeans(LINE, 2, init=init, seed=seed)
        if init == "pp":
            assert groups(part) == [(0, 1), (2, 3)]
    assert any(groups(kmeans(LINE, 2, init=init, seed=s)) == [(0, 1), (2, 3)] for s in range(10))


@pytest.mark.parametrize("algo", [kmeans, gmm_em, farthest_first])
def test_singletons_and_single_cluster(algo):
    X = np.random.default_rng(0).random((7, 3))
    part = algo(X, 7, seed=1)
    assert part.n == 7 and sorted(part.assignment.tolist()) == list(range(7))
    one = algo(X, 1, seed=1)
    assert one.n == 1 and not one.assignment.any()


@pytest.mark.parametrize("algo", [kmeans, gmm_em, farthest_first])
def test_too_few_points(algo):
    with pytest.raises(TooFewPoints):
        algo(np.zeros((2, 2)), 3, seed=0)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 8), st.integers(1, 3), st.integers(0, 2**32))
def test_kmeans_reaches_optimum_in_fifty_restarts(L, n, seed):
    n = min(n, L)
    X = np.random.default_rng(seed).normal(size=(L, 2))
    best = brute_force_optimum(X, n)
    objectives = [sse(X, kmeans(X, n, seed=s).assignment) for s in range(50)]
    assert min(objectives) <= best + 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_kmeans_objective_non_increasing(seed):
    r = np.random.default_rng(seed)
    X = r.random((int(r.integers(5, 60)), int(r.integers(1, 6))))
    trace = kmeans(X, int(r.integers(1, 5)), seed=seed).trace
    assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))


def test_kmeans_reseeds_empty_clusters():
    X = np.array([[0.0], [0.0], [0.0], [5.0]])
    part = kmeans(X, 2, init="random", seed=3)
    assert groups(part) == [(0, 1, 2), (3,)]


def test_partition_ids_compact():
    X = np.array([[0.0], [0.0], [0.0], [0.0]])
    part = kmeans(X, 3, seed=0)
    assert set(part.assignment.tolist()) == set(range(part.n))
    assert len(part.proximity) == part.n
    assert all(0 < p <= 1 for p in part.proximity)


# Gaussian mixtures

@pytest.mark.parametrize("cov", ["full", "diag"])
def test_gmm_line_example_matches_kmeans(cov):
    assert groups(gmm_em(LINE, 2, covariance=cov, seed=0)) == [(0, 1), (2, 3)]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["full", "diag"]))
def test_em_log_likelihood_monotone(seed, cov):
    r = np.random.default_rng(seed)
    X = r.random((int(r.integers(4, 80)), int(r.integers(1, 8))))
    trace = gmm_em(X, int(r.integers(1, 4)), covariance=cov, seed=seed).trace
    assert all(b >= a - 1e-9 for a, b in zip(trace, trace[1:]))


def test_gmm_one_component_covers_everything():
    X = np.random.default_rng(2).random((12, 3))
    part = gmm_em(X, 1, seed=0)
    assert part.n == 1 and len(part.trace) >= 1


def test_gmm_duplicate_points_floor():
    X = np.array([[0.5, 0.5]] * 6 + [[0.9, 0.1]] * 6)
    part = gmm_em(X, 2, covariance="full", seed=0)
    assert groups(part) == [tuple(range(6)), tuple(range(6, 12))]


# farthest-first

def test_farthest_first_example():
    X = np.array([[0.0], [1.0], [10.0]])
    part = farthest_first(X, 2, first=0)
    assert part.trace == [0, 2]
    assert groups(part) == [(0, 1), (2,)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_farthest_first_centers_brute_force(seed):
    r = np.random.default_rng(seed)
    L = int(r.integers(2, 13))
    X = r.integers(0, 4, size=(L, 2)).astype(float)
    n = int(r.integers(1, L + 1))
    centers = farthest_first(X, n, seed=seed).trace
    for step in range(1, len(centers)):
        chosen = centers[:step]
        score = [min(np.linalg.norm(X[i] - X[c]) for c in chosen) for i in range(L)]
        best = max(score)
        if best > 0:
            assert centers[step] == min(i for i in range(L) if score[i] == best)
        else:
            assert centers[step] not in chosen


# seeds, aggregation, reports

def test_splitmix64_reference_output():
    # first output of the reference generator from state 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert derive_seed(0, 0) == splitmix64(0)
    assert len({derive_seed(42, i) for i in range(1000)}) == 1000


def test_params_validation():
    for bad in (dict(algorithm="dbscan"), dict(granularity=7), dict(runs=0),
                dict(freq_threshold=1.5), dict(seed=-1)):
        with pytest.raises((ValueError, BadGranularity)):
            ClusterParams(**bad)


def _blobs(seed=0, per=5):
    r = np.random.default_rng(seed)
    centers = np.array([[0.1, 0.1], [0.9, 0.1], [0.5, 0.9]])
    return np.vstack([c + r.normal(scale=0.01, size=(per, 2)) for c in centers])


# uniform init can drop two centers into one blob, so its runs disagree
@pytest.mark.parametrize("algorithm", [a for a in ALGORITHMS if a != "kmeans-random"])
def test_stable_data_gives_frequency_one(algorithm):
    t = table(_blobs(per=6))  # 18 lemmas at g=5 -> n = 18 // 6 = 3
    rep = run_repeated(t, ClusterParams(algorithm=algorithm, granularity=5, runs=20, seed=3))
    assert rep.params["n"] == 3
    assert [c.frequency for c in rep.clusters] == [1.0, 1.0, 1.0]
    assert sorted(len(c.lemmas) for c in rep.clusters) == [6, 6, 6]


def test_runs_one_frequencies_exactly_one():
    t = table(np.random.default_rng(5).random((30, 4)))
    rep = run_repeated(t, ClusterParams(runs=1, prox_threshold=0.0))
    assert rep.clusters and all(c.frequency == 1.0 for c in rep.clusters)
    assert sorted(m for c in rep.clusters for m in c.lemmas) == sorted(t.names)


def test_all_singletons_when_n_equals_points():
    t = table(np.random.default_rng(1).random((6, 2)))
    # 6 lemmas at g=5 -> n=1; force n=#points through single runs instead
    for algo in ALGORITHMS:
        labels = single_run(t.matrix, 6, ClusterParams(algorithm=algo), seed=7)
        assert sorted(labels.tolist()) == list(range(6))
    labelings = [single_run(t.matrix, 6, ClusterParams(), seed=s) for s in range(5)]
    kept = aggregate(t.names, t.matrix, labelings, ClusterParams(runs=5))
    assert sorted(c.lemmas for c in kept) == [(name,) for name in sorted(t.names)]
    assert all(c.frequency == 1.0 and c.proximity == 1.0 for c in kept)


def test_aggregation_order_independent():
    t = table(np.random.default_rng(9).random((40, 3)))
    params = ClusterParams(runs=30, freq_threshold=0.1, prox_threshold=0.0)
    labelings = [single_run(t.matrix, 8, params, derive_seed(1, i)) for i in range(30)]
    base = aggregate(t.names, t.matrix, labelings, params)
    assert base
    for seed in range(5):
        shuffled = labelings[:]
        random.Random(seed).shuffle(shuffled)
        assert aggregate(t.names, t.matrix, shuffled, params) == base


def test_frequency_counts_exact_sets():
    names = ["a", "b", "c"]
    X = np.zeros((3, 1))
    labelings = [np.array([0, 0, 1]), np.array([0, 0, 1]), np.array([0, 1, 1]), np.array([0, 0, 0])]
    kept = aggregate(names, X, labelings, ClusterParams(runs=4, freq_threshold=0.0))
    freq = {c.lemmas: c.frequency for c in kept}
    assert freq == {("a", "b"): 0.5, ("c",): 0.5, ("a",): 0.25, ("b", "c"): 0.25, ("a", "b", "c"): 0.25}
    assert [c.lemmas for c in kept][:2] == [("a", "b"), ("c",)]


def test_thresholds_filter():
    names = ["a", "b", "c"]
    X = np.array([[0.0], [0.0], [9.0]])
    labelings = [np.array([0, 0, 1])] * 3 + [np.array([0, 1, 1])]
    kept = aggregate(names, X, labelings, ClusterParams(runs=4, freq_threshold=0.6, prox_threshold=0.5))
    assert [c.lemmas for c in kept] == [("a", "b"), ("c",)]
    kept = aggregate(names, X, labelings, ClusterParams(runs=4, freq_threshold=0.2, prox_threshold=0.5))
    assert ("b", "c") not in [c.lemmas for c in kept]


def test_run_repeated_errors():
    with pytest.raises(TooFewPoints):
        run_repeated(table(np.zeros((0, 2))), ClusterParams())


def test_jobs_do_not_change_report():
    t = table(np.random.default_rng(4).random((36, 4)))
    params = ClusterParams(runs=12, freq_threshold=0.0, prox_threshold=0.0)
    assert dumps_report(run_repeated(t, params, jobs=2)) == dumps_report(run_repeated(t, params))


def _report():
    clusters = [ReportCluster(("a", "b", "c", "d"), 0.9, 0.8), ReportCluster(("e",), 1.0, 1.0),
                ReportCluster(("a", "x"), 0.7, 0.6)]
    return ClusterReport(clusters, {"runs": 10}, {"lemmas": list("abcdexz"), "sha256": "0"})


def test_suggest():
    rep = _report()
    assert suggest(rep, "a") == [(("b", "c", "d"), 0.9, 0.8), (("x",), 0.7, 0.6)]
    assert suggest(rep, "e") == []
    assert suggest(rep, "z") == []
    with pytest.raises(UnknownLemma):
        suggest(rep, "nope")


def test_report_json_roundtrip():
    rep = ClusterReport([ReportCluster(("a", "b"), 0.81549, 0.7123456789)], {"runs": 3},
                        {"lemmas": ["a", "b"], "sha256": "x"})
    obj = json.loads(dumps_report(rep))
    assert obj["clusters"] == [{"lemmas": ["a", "b"], "frequency": 0.815, "proximity": 0.712346}]
    back = loads_report(dumps_report(rep))
    assert dumps_report(back) == dumps_report(rep)


@pytest.mark.parametrize("text", ["", "{}", '{"clusters": [{"lemmas": []}], "params": {}}', "[1]"])
def test_report_json_rejects(text):
    with pytest.raises(ReportFormatError):
        loads_report(text)
