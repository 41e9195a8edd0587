"""Grayscale histograms and the column-per-image feature matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, DuplicateId, EmptyImage, EmptyInput
from .imageio import GrayImage

BINS = 256


@dataclass(frozen=True)
class FeatureMatrix:
    """``data`` is rows x cols; column j holds the feature vector of ``column_ids[j]``."""

    data: np.ndarray
    column_ids: tuple[str, ...]

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise BadDimension(f"feature matrix must be non-empty 2-D, got shape {data.shape}")
        ids = tuple(self.column_ids)
        if len(ids) != data.shape[1]:
            raise BadDimension(f"{len(ids)} column ids for {data.shape[1]} columns")
        if len(set(ids)) != len(ids):
            raise DuplicateId("column ids must be distinct")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "column_ids", ids)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]


def compute_histogram(img: GrayImage) -> np.ndarray:
    """Return the 256-bin probability vector ``h_i = n_i / n``."""
    n = img.pixels.size
    if n == 0:
        raise EmptyImage("cannot histogram an image with no pixels")
    counts = np.bincount(img.pixels.ravel(), minlength=BINS)
    return counts.astype(np.float64) / n


def assemble_matrix(histograms) -> FeatureMatrix:
    """Stack ``(image_id, histogram)`` pairs as columns, preserving order."""
    histograms = list(histograms)
    if not histograms:
        raise EmptyInput("no histograms to assemble")
    ids = [image_id for image_id, _ in histograms]
    seen = set()
    for image_id in ids:
        if image_id in seen:
            raise DuplicateId(f"duplicate image id {image_id!r}")
        seen.add(image_id)
    cols = []
    for image_id, h in histograms:
        h = np.asarray(h, dtype=np.float64)
        if h.shape != (BINS,):
            raise BadDimension(f"histogram for {image_id!r} has shape {h.shape}, expected ({BINS},)")
        cols.append(h)
    return FeatureMatrix(np.column_stack(cols), tuple(ids))
