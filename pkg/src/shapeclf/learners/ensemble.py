"""Bootstrap aggregation and random forests over CART trees."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from math import isqrt

import numpy as np

from ..dataio import Dataset
from ..prng import Prng
from .base import Model
from .tree import TreeModel, fit_tree


def bootstrap_sample(n: int, rng: Prng) -> np.ndarray:
    """``n`` uniform draws with replacement from ``range(n)``."""
    if n < 1:
        raise ValueError(f"bootstrap needs n >= 1, got {n}")
    return rng.integers(n, n)


def _build_members(build, t: int, n_jobs: int) -> list:
    # member i is a pure function of i, so scheduling cannot change the result
    if n_jobs == 1 or t == 1:
        return [build(i) for i in range(t)]
    with ThreadPoolExecutor(max_workers=None if n_jobs < 1 else n_jobs) as pool:
        return list(pool.map(build, range(t)))


class EnsembleModel(Model):
    """Averages the class distributions of its members."""

    def __init__(self, members, params=None, seed=0):
        if not members:
            raise ValueError("an ensemble needs at least one member")
        first = members[0]
        super().__init__(first.n_features, first.classes)
        self.members = list(members)
        self.params = dict(params or {})
        self.seed = seed

    def predict_proba(self, X) -> np.ndarray:
        X = self._check(X)
        total = np.zeros((len(X), self.n_classes))
        for member in self.members:
            total += member.predict_proba(X)
        return total / len(self.members)


class BaggingModel(EnsembleModel):
    kind = "bagging"


class ForestModel(EnsembleModel):
    kind = "forest"


def fit_bagging(train: Dataset, t: int = 10, min_leaf: int = 1, seed: int = 1,
                n_jobs: int = 1) -> BaggingModel:
    """Bagged full-feature CART trees.

    Member ``i`` sees the bootstrap replicate drawn from stream ``("bag", i)``.
    """
    if t < 1:
        raise ValueError(f"bagging needs t >= 1, got {t}")
    n = len(train)

    def build(i: int) -> TreeModel:
        rows = bootstrap_sample(n, Prng.stream(seed, "bag", i))
        return fit_tree(train, max_features=None, min_leaf=min_leaf, indices=rows)

    members = _build_members(build, t, n_jobs)
    return BaggingModel(members, {"t": t, "min_leaf": min_leaf}, seed)


def default_mtry(n_features: int) -> int:
    return max(1, isqrt(n_features))


def fit_forest(train: Dataset, t: int = 100, mtry: int | None = None, min_leaf: int = 1,
               seed: int = 1, n_jobs: int = 1, bootstrap: bool = True) -> ForestModel:
    """Random forest: bootstrap replicates plus a random feature subset per node.

    Member ``i`` draws its replicate from ``("rf-boot", i)`` and its node
    subsets from ``("rf-node", i)``. ``bootstrap=False`` trains every member
    on the full data (a hook for testing the reduction to a single tree).
    """
    d = train.X.shape[1]
    mtry = default_mtry(d) if mtry is None else mtry
    if t < 1:
        raise ValueError(f"forest needs t >= 1, got {t}")
    if not 1 <= mtry <= d:
        raise ValueError(f"mtry must be in [1, {d}], got {mtry}")
    n = len(train)

    def build(i: int) -> TreeModel:
        rows = bootstrap_sample(n, Prng.stream(seed, "rf-boot", i)) if bootstrap else None
        return fit_tree(train, max_features=mtry, min_leaf=min_leaf,
                        rng=Prng.stream(seed, "rf-node", i), indices=rows)

    members = _build_members(build, t, n_jobs)
    params = {"t": t, "mtry": mtry, "min_leaf": min_leaf, "bootstrap": bootstrap}
    return ForestModel(members, params, seed)
