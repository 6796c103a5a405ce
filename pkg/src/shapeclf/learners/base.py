from __future__ import annotations

import numpy as np


class Model:
    """A trained classifier mapping numeric rows to class distributions."""

    kind = "model"

    def __init__(self, n_features: int, classes: tuple[str, ...]):
        self.n_features = n_features
        self.classes = tuple(classes)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def _check(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features:
            raise ValueError(f"expected {self.n_features} features per instance, got {X.shape[1]}")
        return X

    def predict_proba(self, X) -> np.ndarray:
        raise NotImplementedError

    def predict(self, X) -> np.ndarray:
        # np.argmax returns the first maximum, i.e. the lowest class index
        return np.argmax(self.predict_proba(X), axis=1)


def predict_dist(model: Model, instance) -> np.ndarray:
    """Class distribution for a single instance."""
    instance = np.asarray(instance, dtype=float)
    if instance.ndim != 1:
        raise ValueError("predict_dist takes one instance; use model.predict_proba for batches")
    return model.predict_proba(instance)[0]


def classify(model: Model, instance) -> int:
    return int(np.argmax(predict_dist(model, instance)))
