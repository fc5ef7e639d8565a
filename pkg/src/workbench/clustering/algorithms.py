"""Clustering back ends: Lloyd k-means, Gaussian-mixture EM, and
farthest-first traversal.

All three return a :class:`Partition` with compacted cluster ids. Ties
(nearest centroid, responsibility, farthest point) go to the lowest
index, which is what ``np.argmin``/``np.argmax`` already do.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist
from scipy.special import logsumexp

from ..errors import TooFewPoints

log = logging.getLogger(__name__)

MAX_ITERATIONS = 100
TOLERANCE = 1e-6
COVARIANCE_FLOOR = 1e-6


@dataclass
class Partition:
    assignment: np.ndarray
    n: int
    proximity: np.ndarray
    trace: list = field(default_factory=list)

    def clusters(self):
        return [np.flatnonzero(self.assignment == c) for c in range(self.n)]


def proximity(points):
    """``1 / (1 + mean pairwise Euclidean distance)``; a singleton scores 1."""
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        raise ValueError("proximity of an empty cluster")
    if len(points) == 1:
        return 1.0
    return 1.0 / (1.0 + float(pdist(points).mean()))


def make_partition(X, labels, trace=None):
    """Compact ``labels`` to ids ``0..n-1`` (order preserved) and score clusters."""
    uniq, compact = np.unique(labels, return_inverse=True)
    compact = compact.astype(int).reshape(-1)
    prox = np.array([proximity(X[compact == c]) for c in range(len(uniq))])
    return Partition(compact, len(uniq), prox, trace or [])


def _check(X, n):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError("feature matrix must be two-dimensional")
    if n < 1:
        raise ValueError("cluster count must be >= 1")
    if len(X) < n:
        raise TooFewPoints(f"{len(X)} points cannot form {n} clusters")
    return X


def _sqdist(X, C):
    diff = X[:, None, :] - C[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def kmeans_pp_init(X, n, rng):
    L = len(X)
    chosen = [int(rng.integers(L))]
    d2 = _sqdist(X, X[chosen]).min(axis=1)
    while len(chosen) < n:
        total = d2.sum()
        if total > 0:
            nxt = int(rng.choice(L, p=d2 / total))
        else:
            # every point coincides with a center: pick among the rest
            rest = np.setdiff1d(np.arange(L), chosen)
            nxt = int(rng.choice(rest))
        chosen.append(nxt)
        d2 = np.minimum(d2, _sqdist(X, X[[nxt]])[:, 0])
    return np.array(chosen)


def kmeans(X, n, init="pp", seed=None, max_iter=MAX_ITERATIONS):
    """Lloyd's algorithm with k-means++ (``"pp"``) or uniform (``"random"``)
    initial centers. ``trace`` holds the within-cluster sum of squares
    after each centroid update."""
    X = _check(X, n)
    rng = _rng(seed)
    if init == "pp":
        idx = kmeans_pp_init(X, n, rng)
    elif init == "random":
        idx = rng.choice(len(X), size=n, replace=False)
    else:
        raise ValueError(f"unknown init {init!r}")
    centers = X[idx].copy()
    labels = None
    trace = []
    for _ in range(max_iter):
        d2 = _sqdist(X, centers)
        new = d2.argmin(axis=1)
        counts = np.bincount(new, minlength=n)
        for c in np.flatnonzero(counts == 0):
            own = d2[np.arange(len(X)), new]
            far = int(own.argmax())
            if own[far] == 0:
                break
            centers[c] = X[far]
            d2[:, c] = _sqdist(X, X[[far]])[:, 0]
            new = d2.argmin(axis=1)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for c in range(n):
            members = X[labels == c]
            if len(members):
                centers[c] = members.mean(axis=0)
        trace.append(float(_sqdist(X, centers)[np.arange(len(X)), labels].sum()))
    return make_partition(X, labels, trace)


def _clip_covariance(S, floor, full):
    if full:
        vals, vecs = np.linalg.eigh(S)
        return vecs, np.maximum(vals, floor)
    return None, np.maximum(S, floor)


def _log_gaussian(X, mean, cov, full):
    vecs, vals = cov
    diff = X - mean
    proj = diff @ vecs if full else diff
    maha = (proj ** 2 / vals).sum(axis=1)
    return -0.5 * (X.shape[1] * np.log(2 * np.pi) + np.log(vals).sum() + maha)


def _covariance(X, resp_k, mean, nk, floor, full):
    diff = X - mean
    if full:
        S = (resp_k[:, None] * diff).T @ diff / nk
        S = (S + S.T) / 2
    else:
        S = (resp_k[:, None] * diff ** 2).sum(axis=0) / nk
    return _clip_covariance(S, floor, full)


def gmm_em(X, n, covariance="full", seed=None, max_iter=MAX_ITERATIONS,
           tol=TOLERANCE, floor=COVARIANCE_FLOOR):
    """EM for a Gaussian mixture, started from a k-means++ partition.

    Covariances are floored by clipping eigenvalues (full) or variances
    (diagonal) at ``floor``; this is the exact constrained M-step, so the
    log-likelihood in ``trace`` never decreases. A component whose total
    responsibility underflows to zero is dropped.
    """
    if covariance not in ("full", "diag"):
        raise ValueError(f"unknown covariance structure {covariance!r}")
    full = covariance == "full"
    X = _check(X, n)
    L = len(X)
    rng = _rng(seed)
    start = kmeans(X, n, init="pp", seed=rng)
    resp = np.zeros((L, start.n))
    resp[np.arange(L), start.assignment] = 1.0

    trace = []
    log_prob = None
    for _ in range(max(max_iter, 1)):
        nk = resp.sum(axis=0)
        keep = nk > np.finfo(float).tiny
        if not keep.all():
            log.debug("dropping %d degenerate components", int((~keep).sum()))
            resp, nk = resp[:, keep], nk[keep]
        weights = nk / L
        means = (resp.T @ X) / nk[:, None]
        covs = [_covariance(X, resp[:, k], means[k], nk[k], floor, full) for k in range(len(nk))]

        log_prob = np.column_stack([
            np.log(weights[k]) + _log_gaussian(X, means[k], covs[k], full)
            for k in range(len(nk))
        ])
        norm = logsumexp(log_prob, axis=1)
        ll = float(norm.sum())
        trace.append(ll)
        if len(trace) > 1 and ll - trace[-2] < tol:
            break
        resp = np.exp(log_prob - norm[:, None])
    labels = log_prob.argmax(axis=1)
    return make_partition(X, labels, trace)


def farthest_first(X, n, seed=None, first=None):
    """Farthest-first traversal. ``trace`` lists the chosen center indices."""
    X = _check(X, n)
    L = len(X)
    rng = _rng(seed)
    start = int(rng.integers(L)) if first is None else int(first)
    centers = [start]
    mind = np.sqrt(_sqdist(X, X[[start]])[:, 0])
    while len(centers) < n:
        nxt = int(mind.argmax())
        if nxt in centers:
            # all remaining points duplicate a center
            nxt = int(np.setdiff1d(np.arange(L), centers)[0])
        centers.append(nxt)
        mind = np.minimum(mind, np.sqrt(_sqdist(X, X[[nxt]])[:, 0]))
    labels = _sqdist(X, X[centers]).argmin(axis=1)
    return make_partition(X, labels, centers)
