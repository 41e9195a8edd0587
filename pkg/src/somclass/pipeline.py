"""End-to-end orchestration: images -> histograms -> selection -> SOM -> evaluation."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .errors import SomclassError, ValidationError
from .evaluation import (
    ClusterMapping,
    ConfusionMatrix,
    EvaluationReport,
    accuracy,
    confusion,
    map_clusters,
)
from .features import FeatureMatrix, assemble_matrix, compute_histogram
from .imageio import load_image, rgb_to_gray
from .lsa import LsaModel, fit_lsa, project_lsa
from .pca import PcaModel, fit_pca, project_pca
from .persist import Manifest
from .som import SomConfig, SomModel, assign, train

METHODS = ("pca", "lsa")


@dataclass(frozen=True)
class PipelineConfig:
    method: str = "pca"
    k: int = 100
    clusters: int = 5
    alpha: float = 0.5
    epochs: int = 500
    seed: int = 0
    eps: float = 1e-6
    truncate: bool = True

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}, got {self.method!r}")

    def som_config(self) -> SomConfig:
        return SomConfig(
            dim=self.k,
            clusters=self.clusters,
            initial_rate=self.alpha,
            epochs=self.epochs,
            seed=self.seed,
            convergence_eps=self.eps,
        )


@dataclass(frozen=True)
class Evaluation:
    predicted: np.ndarray
    truth: np.ndarray
    confusion: ConfusionMatrix
    mapping: ClusterMapping
    report: EvaluationReport


@dataclass(frozen=True)
class PipelineResult:
    selection: PcaModel | LsaModel
    projected: FeatureMatrix
    som: SomModel
    evaluation: Evaluation


@contextmanager
def stage(name: str):
    """Tag any package error escaping the block with the pipeline stage name."""
    try:
        yield
    except SomclassError as exc:
        if getattr(exc, "stage", None) is None:
            exc.stage = name
        raise


def extract_features(manifest: Manifest) -> FeatureMatrix:
    """Histogram every manifest image; all decode errors are collected before raising."""
    hists, failures = [], []
    for image_id, _ in manifest.entries:
        try:
            gray = rgb_to_gray(load_image(manifest.resolve(image_id)))
            hists.append((image_id, compute_histogram(gray)))
        except SomclassError as exc:
            failures.append(exc)
    if failures:
        first = failures[0]
        if len(failures) > 1:
            lines = "\n".join(f"  {type(e).__name__}: {e}" for e in failures)
            raise type(first)(f"{len(failures)} images failed to load:\n{lines}")
        raise first
    return assemble_matrix(hists)


def select(features: FeatureMatrix, method: str, k: int) -> tuple[PcaModel | LsaModel, FeatureMatrix]:
    if method == "pca":
        model = fit_pca(features, k)
        return model, project_pca(model, features)
    if method == "lsa":
        model = fit_lsa(features, k)
        return model, project_lsa(model, features)
    raise ValidationError(f"unknown selection method {method!r}")


def evaluate(
    som: SomModel,
    projected: FeatureMatrix,
    truth: np.ndarray,
    class_names: tuple[str, ...],
    truncate: bool = True,
) -> Evaluation:
    predicted = assign(som, projected)
    cm = confusion(predicted, truth, som.config.clusters, len(class_names), class_names)
    mapping = map_clusters(cm)
    return Evaluation(predicted, np.asarray(truth), cm, mapping, accuracy(cm, mapping, truncate))


def run_pipeline(
    features: FeatureMatrix, truth: np.ndarray, class_names: tuple[str, ...], config: PipelineConfig
) -> PipelineResult:
    with stage("select"):
        model, projected = select(features, config.method, config.k)
    with stage("train"):
        som = train(projected, config.som_config())
    with stage("evaluate"):
        ev = evaluate(som, projected, truth, class_names, config.truncate)
    return PipelineResult(model, projected, som, ev)
