"""Discretized naive-structure Bayes network.

The class node is the only parent of every feature. Numeric features are cut
into equal-frequency bins fitted on the training data, and the conditional
probability tables are smoothed with a pseudo-count.
"""

from __future__ import annotations

import numpy as np

from ..dataio import Dataset
from .base import Model


def discretize_fit(values, bins: int = 10) -> np.ndarray:
    """Equal-frequency cut points for one feature.

    The sorted values are split into ``bins`` near-equal groups; each cut is
    the midpoint between the last value of a group and the first of the next.
    Cuts falling inside a run of equal values are dropped, so fewer bins may
    result (none at all for a constant feature).
    """
    if bins < 2:
        raise ValueError(f"need at least 2 bins, got {bins}")
    v = np.sort(np.asarray(values, dtype=float))
    n = len(v)
    edges = []
    for j in range(1, bins):
        q = (j * n) // bins
        if 0 < q < n and v[q - 1] < v[q]:
            edges.append((v[q - 1] + v[q]) / 2)
    return np.unique(np.array(edges, dtype=float))


def discretize_apply(edges: np.ndarray, value):
    """Bin index: the number of cut points strictly below ``value``."""
    return np.searchsorted(edges, value, side="left")


class NaiveBayesModel(Model):
    kind = "bayesnet"

    def __init__(self, n_features, classes, bin_edges, priors, tables, alpha, bins):
        super().__init__(n_features, classes)
        self.bin_edges = [np.asarray(e, dtype=float) for e in bin_edges]
        self.priors = np.asarray(priors, dtype=float)
        self.tables = [np.asarray(t, dtype=float) for t in tables]  # (n_classes, n_bins)
        self.alpha = alpha
        self.bins = bins
        self.params = {"bins": bins, "alpha": alpha}

    def predict_proba(self, X) -> np.ndarray:
        X = self._check(X)
        log_post = np.tile(np.log(self.priors), (len(X), 1))
        for f, (edges, table) in enumerate(zip(self.bin_edges, self.tables)):
            b = discretize_apply(edges, X[:, f])
            log_post += np.log(table[:, b]).T
        log_post -= log_post.max(axis=1, keepdims=True)
        post = np.exp(log_post)
        return post / post.sum(axis=1, keepdims=True)


def fit_naive_bayes(train: Dataset, bins: int = 10, alpha: float = 0.5) -> NaiveBayesModel:
    """Priors ``(n_c + a) / (n + a |C|)``; tables ``(count + a) / (n_c + a B_f)``."""
    X, y = train.X, train.y
    n, d = X.shape
    if n == 0:
        raise ValueError("cannot fit on an empty training set")
    C = train.n_classes
    class_counts = np.bincount(y, minlength=C).astype(float)
    priors = (class_counts + alpha) / (n + alpha * C)

    edges, tables = [], []
    for f in range(d):
        e = discretize_fit(X[:, f], bins)
        n_bins = len(e) + 1
        joint = np.zeros((C, n_bins))
        np.add.at(joint, (y, discretize_apply(e, X[:, f])), 1.0)
        tables.append((joint + alpha) / (class_counts[:, None] + alpha * n_bins))
        edges.append(e)
    return NaiveBayesModel(d, train.classes, edges, priors, tables, alpha, bins)
