"""CART classification trees with Gini splits."""

from __future__ import annotations

import numpy as np

from ..dataio import Dataset
from ..prng import Prng
from .base import Model

# score differences below this are treated as ties
_TIE = 1e-12


class TreeModel(Model):
    """Binary tree stored as flat preorder arrays.

    ``feature[i] == -1`` marks a leaf. For an internal node an instance goes
    left when ``x[feature] <= threshold``; the left child is always ``i + 1``.
    """

    kind = "tree"

    def __init__(self, n_features, classes, feature, threshold, right, counts, params=None):
        super().__init__(n_features, classes)
        self.feature = np.asarray(feature, dtype=np.int64)
        self.threshold = np.asarray(threshold, dtype=float)
        self.right = np.asarray(right, dtype=np.int64)
        self.counts = np.asarray(counts, dtype=np.int64).reshape(len(self.feature), len(self.classes))
        self.params = dict(params or {})
        totals = self.counts.sum(axis=1, keepdims=True)
        self.distribution = np.divide(
            self.counts, totals, out=np.zeros(self.counts.shape), where=totals > 0
        )

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def depth(self) -> int:
        best, stack = 0, [(0, 0)]
        while stack:
            node, d = stack.pop()
            if self.feature[node] < 0:
                best = max(best, d)
            else:
                stack += [(node + 1, d + 1), (int(self.right[node]), d + 1)]
        return best

    def apply(self, X) -> np.ndarray:
        """Leaf index reached by every row."""
        X = self._check(X)
        node = np.zeros(len(X), dtype=np.int64)
        while True:
            active = np.flatnonzero(self.feature[node] >= 0)
            if active.size == 0:
                return node
            at = node[active]
            go_left = X[active, self.feature[at]] <= self.threshold[at]
            node[active] = np.where(go_left, at + 1, self.right[at])

    def predict_proba(self, X) -> np.ndarray:
        return self.distribution[self.apply(X)]


def _gini_scores(x, y, n_classes, parent, min_leaf):
    """Best split of one feature: ``(score, threshold)`` or ``None``.

    ``score = sum(L^2)/n_left + sum(R^2)/n_right`` is the weighted Gini
    decrease up to constants shared by every candidate at the node.
    """
    n = len(x)
    order = np.argsort(x, kind="stable")
    xs = x[order]
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y[order]] = 1.0
    left = np.cumsum(onehot, axis=0)[:-1]
    right = parent - left
    n_left = np.arange(1, n, dtype=float)
    n_right = n - n_left
    valid = (xs[:-1] < xs[1:]) & (n_left >= min_leaf) & (n_right >= min_leaf)
    if not valid.any():
        return None
    score = (left**2).sum(axis=1) / n_left + (right**2).sum(axis=1) / n_right
    score[~valid] = -np.inf
    top = score.max()
    pos = int(np.argmax(score >= top - _TIE * max(1.0, abs(top))))
    lo, hi = xs[pos], xs[pos + 1]
    threshold = (lo + hi) / 2
    if not lo <= threshold < hi:  # midpoint of adjacent doubles can round up to hi
        threshold = lo
    return float(score[pos]), float(threshold)


def grow_tree(X, y, n_classes, max_features=None, min_leaf=1, rng: Prng | None = None):
    """Grow a tree on arrays; returns ``(feature, threshold, right, counts)`` lists."""
    n, d = X.shape
    if n == 0:
        raise ValueError("cannot grow a tree on an empty training set")
    if max_features is not None and not 1 <= max_features <= d:
        raise ValueError(f"max_features must be in [1, {d}], got {max_features}")
    if max_features is not None and max_features < d and rng is None:
        raise ValueError("feature subsampling needs an rng stream")

    feature, threshold, right, counts = [], [], [], []
    # preorder via an explicit stack: (row indices, parent node or -1)
    stack = [(np.arange(n), -1)]
    while stack:
        idx, parent_of_right = stack.pop()
        node = len(feature)
        if parent_of_right >= 0:
            right[parent_of_right] = node
        yi = y[idx]
        tally = np.bincount(yi, minlength=n_classes)
        feature.append(-1)
        threshold.append(0.0)
        right.append(-1)
        counts.append(tally.tolist())

        m = len(idx)
        if m < 2 * min_leaf or np.count_nonzero(tally) <= 1:
            continue
        if max_features is None or max_features >= d:
            candidates = range(d)
        else:
            candidates = sorted(rng.sample(d, max_features))

        parent = tally.astype(float)
        best = None
        for f in candidates:
            found = _gini_scores(X[idx, f], yi, n_classes, parent, min_leaf)
            if found is None:
                continue
            if best is None or found[0] > best[0] + _TIE * max(1.0, abs(best[0])):
                best = (found[0], f, found[1])
        # an impure node splits even at zero gain (XOR-like data needs it);
        # it stays a leaf only when no feature offers a valid threshold
        if best is None:
            continue

        _, f, thr = best
        feature[node] = f
        threshold[node] = thr
        go_left = X[idx, f] <= thr
        stack.append((idx[~go_left], node))
        stack.append((idx[go_left], -1))
    return feature, threshold, right, counts


def fit_tree(train: Dataset, max_features: int | None = None, min_leaf: int = 1,
             rng: Prng | None = None, indices=None) -> TreeModel:
    """Fit a CART tree on ``train`` (or on the rows listed in ``indices``).

    ``max_features=None`` considers every feature at every node; an integer
    draws that many features per node, without replacement, from ``rng``.
    """
    X, y = train.X, train.y
    if indices is not None:
        X, y = X[indices], y[indices]
    if len(y) == 0:
        raise ValueError("cannot fit a tree on an empty training set")
    parts = grow_tree(X, y, train.n_classes, max_features, min_leaf, rng)
    params = {"max_features": max_features, "min_leaf": min_leaf}
    return TreeModel(X.shape[1], train.classes, *parts, params=params)
