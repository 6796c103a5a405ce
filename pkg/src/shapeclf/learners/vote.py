"""Majority-class baseline and the Vote meta-classifier."""

from __future__ import annotations

from typing import Literal

import numpy as np

from ..dataio import Dataset
from .base import Model

Rule = Literal["average", "majority"]
RULES = ("average", "majority")


class ZeroRModel(Model):
    """Always answers with the training class frequencies."""

    kind = "zeror"

    def __init__(self, n_features, classes, distribution):
        super().__init__(n_features, classes)
        self.distribution = np.asarray(distribution, dtype=float)
        self.params = {}

    def predict_proba(self, X) -> np.ndarray:
        X = self._check(X)
        return np.tile(self.distribution, (len(X), 1))


def fit_zero_r(train: Dataset) -> ZeroRModel:
    if len(train) == 0:
        raise ValueError("cannot fit on an empty training set")
    counts = np.bincount(train.y, minlength=train.n_classes)
    return ZeroRModel(train.X.shape[1], train.classes, counts / counts.sum())


class VoteModel(Model):
    """Combines member predictions.

    ``average`` returns the mean member distribution; ``majority`` gives each
    member one vote for its top class and returns the vote shares. With no
    members every prediction comes from the ZeroR ``fallback``.
    """

    kind = "vote"

    def __init__(self, members, rule: Rule, fallback: ZeroRModel):
        if rule not in RULES:
            raise ValueError(f"unknown combination rule {rule!r}; expected one of {RULES}")
        super().__init__(fallback.n_features, fallback.classes)
        self.members = list(members)
        self.rule = rule
        self.fallback = fallback
        self.params = {"rule": rule}

    def predict_proba(self, X) -> np.ndarray:
        X = self._check(X)
        if not self.members:
            return self.fallback.predict_proba(X)
        if self.rule == "average":
            total = np.zeros((len(X), self.n_classes))
            for m in self.members:
                total += m.predict_proba(X)
            return total / len(self.members)
        votes = np.zeros((len(X), self.n_classes))
        rows = np.arange(len(X))
        for m in self.members:
            votes[rows, m.predict(X)] += 1.0
        return votes / len(self.members)


def fit_vote(train: Dataset, members=(), rule: Rule = "average", seed: int = 1,
             n_jobs: int = 1) -> VoteModel:
    """Vote over ``members``.

    Members may be already trained :class:`Model` instances, used as they
    are, or learner specs (names or :class:`~shapeclf.learners.LearnerSpec`)
    trained here on ``train``.
    """
    from . import fit_learner  # registry lives in the package namespace

    trained = [
        m if isinstance(m, Model) else fit_learner(m, train, seed=seed, n_jobs=n_jobs)
        for m in members
    ]
    return VoteModel(trained, rule, fit_zero_r(train))
