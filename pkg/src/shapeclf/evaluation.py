"""Stratified k-fold cross-validation with pooled accuracy and confusion."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .dataio import Dataset, stratified_folds
from .learners import LearnerSpec, fit_learner


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    classes: tuple[str, ...]
    cells: np.ndarray  # cells[actual, predicted]

    @property
    def total(self) -> int:
        return int(self.cells.sum())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConfusionMatrix)
            and self.classes == other.classes
            and np.array_equal(self.cells, other.cells)
        )


def format_percent(value: float) -> str:
    """Two decimals, rounding half up on the shortest decimal form of ``value``."""
    return str(Decimal(repr(float(value))).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def accuracy_and_confusion(actual, predicted, classes=None) -> tuple[float, ConfusionMatrix]:
    """Percent of matching labels and the ``[actual, predicted]`` count matrix.

    Labels are class indices; ``classes`` names them (defaults to ``0..K-1``).
    """
    actual = np.asarray(actual, dtype=np.int64)
    predicted = np.asarray(predicted, dtype=np.int64)
    if actual.shape != predicted.shape:
        raise ValueError(f"{len(actual)} actual labels but {len(predicted)} predictions")
    if actual.size == 0:
        raise ValueError("accuracy of an empty label sequence is undefined")
    if classes is None:
        k = int(max(actual.max(), predicted.max())) + 1
        classes = tuple(str(i) for i in range(k))
    k = len(classes)
    cells = np.zeros((k, k), dtype=np.int64)
    np.add.at(cells, (actual, predicted), 1)
    accuracy = 100.0 * int(np.trace(cells)) / actual.size
    return accuracy, ConfusionMatrix(tuple(classes), cells)


@dataclass(frozen=True, eq=False)
class EvalReport:
    learner: str
    accuracy_percent: float
    confusion: ConfusionMatrix
    per_fold_accuracy: tuple[float, ...]
    seed: int
    k: int

    def table_row(self) -> str:
        return f"{self.learner}\t{format_percent(self.accuracy_percent)}"

    def to_dict(self) -> dict:
        return {
            "learner": self.learner,
            "accuracy_percent": self.accuracy_percent,
            "accuracy": format_percent(self.accuracy_percent),
            "folds": self.k,
            "seed": self.seed,
            "classes": list(self.confusion.classes),
            "confusion": self.confusion.cells.tolist(),
            "per_fold_accuracy": list(self.per_fold_accuracy),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def cross_validate(ds: Dataset, learner: LearnerSpec | str, k: int = 10, seed: int = 42,
                   n_jobs: int = 1) -> EvalReport:
    """Pooled stratified ``k``-fold cross-validation of one learner.

    The fold plan depends only on ``(ds labels, k, seed)``, so every learner
    evaluated with the same arguments sees the same partitions. Each fold's
    model is trained with ``seed`` as its master seed.
    """
    spec = LearnerSpec(learner) if isinstance(learner, str) else learner
    plan = stratified_folds(ds, k, seed)
    predicted = np.empty(len(ds), dtype=np.int64)

    def run_fold(f: int):
        train_idx, test_idx = plan.split(f)
        # parallelism is spent on folds, so members train serially
        model = fit_learner(spec, ds.take(train_idx), seed=seed, n_jobs=1)
        return test_idx, model.predict(ds.X[test_idx])

    if n_jobs == 1:
        results = [run_fold(f) for f in range(k)]
    else:
        with ThreadPoolExecutor(max_workers=None if n_jobs < 1 else n_jobs) as pool:
            results = list(pool.map(run_fold, range(k)))

    per_fold = []
    for test_idx, pred in results:
        predicted[test_idx] = pred
        per_fold.append(100.0 * float(np.mean(pred == ds.y[test_idx])) if len(test_idx) else 0.0)
    accuracy, confusion = accuracy_and_confusion(ds.y, predicted, ds.classes)
    return EvalReport(spec.describe(), accuracy, confusion, tuple(per_fold), seed, k)


def render_table(reports) -> str:
    """``name<TAB>accuracy`` lines, names and percentages padded to align."""
    reports = list(reports)
    if not reports:
        return ""
    name_w = max(len(r.learner) for r in reports)
    acc = [format_percent(r.accuracy_percent) for r in reports]
    acc_w = max(len(a) for a in acc)
    return "".join(f"{r.learner.ljust(name_w)}\t{a.rjust(acc_w)}\n" for r, a in zip(reports, acc))
