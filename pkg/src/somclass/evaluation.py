"""Confusion matrices, cluster-to-class mapping and percent accuracy."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import EmptyMatrix, LabelOutOfRange, LengthMismatch

# above this many clusters or classes the exhaustive search gives way to the Hungarian method
EXHAUSTIVE_LIMIT = 8


@dataclass(frozen=True)
class ConfusionMatrix:
    """``counts[p, t]``: images predicted in cluster p whose true class is t."""

    counts: np.ndarray
    class_names: tuple[str, ...]

    @property
    def clusters(self) -> int:
        return self.counts.shape[0]

    @property
    def classes(self) -> int:
        return self.counts.shape[1]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ClusterMapping:
    """``cluster_to_class[p]`` is the class of cluster p, or None when unmapped."""

    cluster_to_class: tuple[int | None, ...]

    def class_to_cluster(self) -> dict[int, int]:
        return {c: p for p, c in enumerate(self.cluster_to_class) if c is not None}


@dataclass(frozen=True)
class EvaluationReport:
    class_names: tuple[str, ...]
    class_correct: tuple[int, ...]
    class_totals: tuple[int, ...]
    correct_total: int
    image_total: int
    mapping: ClusterMapping
    truncate: bool = True

    @property
    def per_class_accuracy(self) -> tuple[float, ...]:
        # classes without images score 0
        return tuple(
            100.0 * c / n if n else 0.0 for c, n in zip(self.class_correct, self.class_totals)
        )

    @property
    def overall_accuracy(self) -> float:
        return 100.0 * self.correct_total / self.image_total

    @property
    def per_class_display(self) -> tuple[int | float, ...]:
        return tuple(
            _display(c, n, self.truncate) for c, n in zip(self.class_correct, self.class_totals)
        )

    @property
    def overall_display(self) -> int | float:
        return _display(self.correct_total, self.image_total, self.truncate)


def _display(correct: int, total: int, truncate: bool) -> int | float:
    if total == 0:
        return 0
    if truncate:
        return 100 * correct // total
    return round(100.0 * correct / total, 2)


def confusion(predicted, truth, clusters: int, classes: int | None = None, class_names=None) -> ConfusionMatrix:
    """Count (predicted cluster, true class) pairs."""
    classes = clusters if classes is None else classes
    predicted = np.asarray(predicted, dtype=np.int64).ravel()
    truth = np.asarray(truth, dtype=np.int64).ravel()
    if predicted.shape != truth.shape:
        raise LengthMismatch(f"{predicted.size} predictions for {truth.size} labels")
    if predicted.size and (predicted.min() < 0 or predicted.max() >= clusters):
        raise LabelOutOfRange(f"predicted labels must lie in [0, {clusters})")
    if truth.size and (truth.min() < 0 or truth.max() >= classes):
        raise LabelOutOfRange(f"true labels must lie in [0, {classes})")
    counts = np.zeros((clusters, classes), dtype=np.int64)
    np.add.at(counts, (predicted, truth), 1)
    if class_names is None:
        class_names = tuple(f"class{t}" for t in range(classes))
    class_names = tuple(class_names)
    if len(class_names) != classes:
        raise LengthMismatch(f"{len(class_names)} class names for {classes} classes")
    return ConfusionMatrix(counts, class_names)


def _exhaustive(counts: np.ndarray) -> tuple[int | None, ...]:
    n_pred, n_true = counts.shape
    best, best_total = None, -1
    if n_pred <= n_true:
        for classes in itertools.permutations(range(n_true), n_pred):
            total = sum(int(counts[p, c]) for p, c in enumerate(classes))
            if total > best_total:
                best, best_total = classes, total
        return tuple(best)
    for clusters in itertools.permutations(range(n_pred), n_true):
        total = sum(int(counts[p, c]) for c, p in enumerate(clusters))
        if total > best_total:
            best, best_total = clusters, total
    out: list[int | None] = [None] * n_pred
    for c, p in enumerate(best):
        out[p] = c
    return tuple(out)


def map_clusters(cm: ConfusionMatrix) -> ClusterMapping:
    """Injective cluster-to-class assignment maximising the matched count.

    Ties go to the lexicographically first assignment.
    """
    counts = cm.counts
    if max(counts.shape) <= EXHAUSTIVE_LIMIT:
        return ClusterMapping(_exhaustive(counts))
    from scipy.optimize import linear_sum_assignment

    rows, cols = linear_sum_assignment(counts, maximize=True)
    out: list[int | None] = [None] * counts.shape[0]
    for p, c in zip(rows, cols):
        out[int(p)] = int(c)
    return ClusterMapping(tuple(out))


def mapped_total(cm: ConfusionMatrix, mapping: ClusterMapping) -> int:
    return sum(int(cm.counts[p, c]) for p, c in enumerate(mapping.cluster_to_class) if c is not None)


def accuracy(cm: ConfusionMatrix, mapping: ClusterMapping, truncate: bool = True) -> EvaluationReport:
    """Percent of each class landing in the cluster mapped to it.

    Display values are truncated to whole percent when ``truncate`` is set;
    exact counts stay in the report.
    """
    if cm.total == 0:
        raise EmptyMatrix("confusion matrix is empty")
    owner = mapping.class_to_cluster()
    correct = tuple(
        int(cm.counts[owner[c], c]) if c in owner else 0 for c in range(cm.classes)
    )
    totals = tuple(int(n) for n in cm.counts.sum(axis=0))
    return EvaluationReport(
        class_names=cm.class_names,
        class_correct=correct,
        class_totals=totals,
        correct_total=sum(correct),
        image_total=cm.total,
        mapping=mapping,
        truncate=truncate,
    )
