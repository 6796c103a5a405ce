"""From-scratch classifiers and a small registry keyed by learner name."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..dataio import Dataset
from ..prng import Prng
from .base import Model, classify, predict_dist
from .bayes import NaiveBayesModel, discretize_apply, discretize_fit, fit_naive_bayes
from .ensemble import (
    BaggingModel,
    ForestModel,
    bootstrap_sample,
    default_mtry,
    fit_bagging,
    fit_forest,
)
from .persist import ModelFormatError, dumps_model, loads_model
from .tree import TreeModel, fit_tree
from .vote import VoteModel, ZeroRModel, fit_vote, fit_zero_r

LEARNER_NAMES = ("zeror", "tree", "bagging", "forest", "bayesnet", "vote")

# parameters each learner accepts from a spec, with their types
_PARAM_TYPES = {
    "zeror": {},
    "tree": {"max_features": int, "min_leaf": int},
    "bagging": {"t": int, "min_leaf": int},
    "forest": {"t": int, "mtry": int, "min_leaf": int},
    "bayesnet": {"bins": int, "alpha": float},
    "vote": {"rule": str},
}


@dataclass(frozen=True)
class LearnerSpec:
    """A learner name, its parameters and (for vote) its member specs."""

    name: str
    params: dict = field(default_factory=dict)
    members: tuple["LearnerSpec", ...] = ()

    def __post_init__(self):
        if self.name not in LEARNER_NAMES:
            raise ValueError(f"unknown learner {self.name!r}; expected one of {LEARNER_NAMES}")
        allowed = _PARAM_TYPES[self.name]
        for key in self.params:
            if key not in allowed:
                raise ValueError(f"learner {self.name!r} has no parameter {key!r}")
        if self.members and self.name != "vote":
            raise ValueError("only vote takes members")

    @classmethod
    def parse(cls, name: str, params=(), members: str | None = None) -> "LearnerSpec":
        """Build from CLI-style strings: ``params`` holds ``key=value`` items."""
        if name not in LEARNER_NAMES:
            raise ValueError(f"unknown learner {name!r}; expected one of {LEARNER_NAMES}")
        parsed = {}
        for item in params:
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"parameter {item!r} is not key=value")
            kind = _PARAM_TYPES[name].get(key)
            if kind is None:
                raise ValueError(f"learner {name!r} has no parameter {key!r}")
            parsed[key] = kind(value)
        member_specs = ()
        if members:
            member_specs = tuple(cls(m.strip()) for m in members.split(",") if m.strip())
        return cls(name, parsed, member_specs)

    def describe(self) -> str:
        return self.name


def fit_learner(spec: LearnerSpec | str, train: Dataset, seed: int = 42, n_jobs: int = 1) -> Model:
    """Train the learner named by ``spec`` on ``train``."""
    if isinstance(spec, str):
        spec = LearnerSpec(spec)
    p = spec.params
    if spec.name == "zeror":
        return fit_zero_r(train)
    if spec.name == "tree":
        rng = Prng.stream(seed, "tree") if p.get("max_features") else None
        return fit_tree(train, rng=rng, **p)
    if spec.name == "bagging":
        return fit_bagging(train, seed=seed, n_jobs=n_jobs, **p)
    if spec.name == "forest":
        return fit_forest(train, seed=seed, n_jobs=n_jobs, **p)
    if spec.name == "bayesnet":
        return fit_naive_bayes(train, **p)
    return fit_vote(train, spec.members, seed=seed, n_jobs=n_jobs, **p)


__all__ = [
    "LEARNER_NAMES",
    "BaggingModel",
    "ForestModel",
    "LearnerSpec",
    "Model",
    "ModelFormatError",
    "NaiveBayesModel",
    "Prng",
    "TreeModel",
    "VoteModel",
    "ZeroRModel",
    "bootstrap_sample",
    "classify",
    "default_mtry",
    "discretize_apply",
    "discretize_fit",
    "dumps_model",
    "fit_bagging",
    "fit_forest",
    "fit_learner",
    "fit_naive_bayes",
    "fit_tree",
    "fit_vote",
    "fit_zero_r",
    "loads_model",
    "predict_dist",
]
