"""Repeated clustering, cluster-frequency aggregation and suggestions.

A run's clusters are turned into sorted lemma-name sets; a set's
frequency is the fraction of runs in which exactly that set came out as
one cluster. Sets are kept only when both their frequency and their
proximity reach the configured thresholds.

Run ``i`` is seeded with ``splitmix64(master_seed + i * 0x9E3779B97F4A7C15)``
(all arithmetic mod 2**64), so any run can be reproduced on its own.
"""

import hashlib
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ..errors import BadGranularity, ReportFormatError, TooFewPoints, UnknownLemma
from .algorithms import (COVARIANCE_FLOOR, MAX_ITERATIONS, TOLERANCE,
                         farthest_first, gmm_em, kmeans, proximity)

ALGORITHMS = ("kmeans-pp", "kmeans-random", "gmm-full", "gmm-diag", "farthest-first")

# the tool each algorithm imitates
BACKEND_LABELS = {
    "kmeans-pp": "K-means (Matlab)",
    "kmeans-random": "K-means (Weka)",
    "gmm-full": "Gaussian",
    "gmm-diag": "Expectation Maximisation",
    "farthest-first": "FarthestFirst",
}

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x):
    x = (x + GOLDEN) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(master_seed, i):
    return splitmix64((master_seed + i * GOLDEN) & MASK64)


def granularity_to_n(L, g):
    """Cluster count for a library of ``L`` lemmas at granularity ``g``."""
    if isinstance(g, bool) or not isinstance(g, int) or not 1 <= g <= 5:
        raise BadGranularity(f"granularity must be an integer in 1..5, got {g!r}")
    if L < 1:
        raise TooFewPoints("cannot cluster an empty library")
    return max(1, L // (11 - g))


@dataclass(frozen=True)
class ClusterParams:
    algorithm: str = "kmeans-pp"
    granularity: int = 3
    runs: int = 200
    seed: int = 42
    freq_threshold: float = 0.6
    prox_threshold: float = 0.5
    max_iterations: int = MAX_ITERATIONS
    tolerance: float = TOLERANCE
    covariance_floor: float = COVARIANCE_FLOOR

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        granularity_to_n(1, self.granularity)
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for name in ("freq_threshold", "prox_threshold"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class ReportCluster:
    lemmas: tuple
    frequency: float
    proximity: float


@dataclass
class ClusterReport:
    clusters: list
    params: dict
    fingerprint: dict = field(default_factory=dict)

    def lemma_names(self):
        return self.fingerprint.get("lemmas", [])


def single_run(X, n, params, seed):
    """Labels of one clustering run."""
    algo = params.algorithm
    if algo in ("kmeans-pp", "kmeans-random"):
        part = kmeans(X, n, init=algo.split("-")[1], seed=seed, max_iter=params.max_iterations)
    elif algo in ("gmm-full", "gmm-diag"):
        part = gmm_em(X, n, covariance=algo.split("-")[1], seed=seed,
                      max_iter=params.max_iterations, tol=params.tolerance,
                      floor=params.covariance_floor)
    else:
        part = farthest_first(X, n, seed=seed)
    return part.assignment


def _run_task(args):
    X, n, params, seed = args
    return single_run(X, n, params, seed)


def canonical_sets(names, labels):
    groups = {}
    for name, lab in zip(names, labels):
        groups.setdefault(int(lab), []).append(name)
    return [tuple(sorted(g)) for g in groups.values()]


def aggregate(names, X, labelings, params):
    """Tally run labelings into retained clusters, sorted for reporting."""
    runs = len(labelings)
    tally = Counter()
    for labels in labelings:
        tally.update(set(canonical_sets(names, labels)))
    index = {name: k for k, name in enumerate(names)}
    kept = []
    for members, count in tally.items():
        freq = count / runs
        if freq < params.freq_threshold:
            continue
        prox = proximity(X[[index[m] for m in members]])
        if prox < params.prox_threshold:
            continue
        kept.append(ReportCluster(members, freq, prox))
    kept.sort(key=lambda c: (-c.frequency, -c.proximity, c.lemmas))
    return kept


def fingerprint(names, X):
    h = hashlib.sha256()
    for name, row in zip(names, X):
        h.update(name.encode())
        h.update(b",")
        h.update(",".join(f"{v:.6f}" for v in row).encode())
        h.update(b"\n")
    return {"lemmas": list(names), "sha256": h.hexdigest()}


def run_repeated(table, params=ClusterParams(), jobs=1):
    """Cluster ``params.runs`` times and aggregate; ``jobs > 1`` spreads the
    runs over worker processes without changing the result."""
    names = list(table.names)
    X = np.asarray(table.matrix, dtype=float)
    n = granularity_to_n(len(names), params.granularity)
    if len(names) < n:
        raise TooFewPoints(f"{len(names)} lemmas cannot form {n} clusters")
    tasks = [(X, n, params, derive_seed(params.seed, i)) for i in range(params.runs)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            labelings = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        labelings = [_run_task(t) for t in tasks]
    echo = asdict(params)
    echo["n"] = n
    return ClusterReport(aggregate(names, X, labelings, params), echo, fingerprint(names, X))


def suggest(report, lemma):
    """Clusters containing ``lemma``, as ``(other_members, frequency, proximity)``."""
    if lemma not in set(report.lemma_names()):
        raise UnknownLemma(f"lemma {lemma!r} is not in the clustered corpus")
    out = []
    for c in report.clusters:
        if lemma in c.lemmas:
            others = tuple(m for m in c.lemmas if m != lemma)
            if others:
                out.append((others, c.frequency, c.proximity))
    return out


def report_to_json(report):
    return {
        "params": report.params,
        "fingerprint": report.fingerprint,
        "clusters": [
            {"lemmas": list(c.lemmas), "frequency": round(c.frequency, 3),
             "proximity": round(c.proximity, 6)}
            for c in report.clusters
        ],
    }


def dumps_report(report):
    return json.dumps(report_to_json(report), indent=2) + "\n"


def loads_report(text):
    try:
        obj = json.loads(text)
        clusters = [ReportCluster(tuple(c["lemmas"]), float(c["frequency"]), float(c["proximity"]))
                    for c in obj["clusters"]]
        return ClusterReport(clusters, dict(obj["params"]), dict(obj.get("fingerprint", {})))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ReportFormatError(f"malformed cluster report: {exc}") from exc
