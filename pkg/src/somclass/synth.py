"""Synthetic histogram datasets with controllable class separation.

Class c owns the bin band ``[c*dim//classes, (c+1)*dim//classes)``. Its
centroid mixes a uniform distribution over that band with a uniform
distribution over all bins, and the mixing weight is chosen so the closest
pair of centroids sits exactly ``separation`` apart. Each sample adds
``noise * (2u - 1)`` to every bin (u uniform from the seeded generator), clips
at zero and renormalises.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .features import FeatureMatrix
from .rng import SplitMix64


@dataclass(frozen=True)
class SynthSpec:
    classes: int = 5
    per_class: int = 50
    dim: int = 256
    separation: float = 0.19
    noise: float = 0.005
    seed: int = 0

    def __post_init__(self):
        if self.classes < 2:
            raise InvalidSpec(f"need at least 2 classes, got {self.classes}")
        if self.per_class < 1:
            raise InvalidSpec(f"per_class must be >= 1, got {self.per_class}")
        if self.dim < self.classes:
            raise InvalidSpec(f"dim {self.dim} leaves some class without bins")
        if not self.separation > 0:
            raise InvalidSpec(f"separation must be > 0, got {self.separation}")
        if not self.noise >= 0:
            raise InvalidSpec(f"noise must be >= 0, got {self.noise}")
        if not 0 <= self.seed < 1 << 64:
            raise InvalidSpec(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.separation > max_separation(self.classes, self.dim) * (1 + 1e-12):
            raise InvalidSpec(
                f"separation {self.separation} exceeds the maximum "
                f"{max_separation(self.classes, self.dim):.6f} for {self.classes} classes in {self.dim} bins"
            )


def _bands(classes: int, dim: int) -> list[tuple[int, int]]:
    return [(c * dim // classes, (c + 1) * dim // classes) for c in range(classes)]


def max_separation(classes: int, dim: int) -> float:
    """Smallest pairwise distance between pure band centroids."""
    widths = sorted(hi - lo for lo, hi in _bands(classes, dim))
    # disjoint bands: |a - b|^2 = 1/w_a + 1/w_b, smallest for the two widest
    return float(np.sqrt(1.0 / widths[-1] + 1.0 / widths[-2]))


def centroids(spec: SynthSpec) -> np.ndarray:
    """dim x classes matrix; column c is the centroid histogram of class c."""
    mix = min(1.0, spec.separation / max_separation(spec.classes, spec.dim))
    out = np.empty((spec.dim, spec.classes))
    for c, (lo, hi) in enumerate(_bands(spec.classes, spec.dim)):
        band = np.zeros(spec.dim)
        band[lo:hi] = 1.0 / (hi - lo)
        out[:, c] = mix * band + (1.0 - mix) / spec.dim
    return out


def generate(spec: SynthSpec) -> tuple[FeatureMatrix, np.ndarray, tuple[str, ...]]:
    """Return (features, 0-based class labels, class names), class-major column order."""
    rng = SplitMix64(spec.seed)
    cents = centroids(spec)
    cols, labels, ids = [], [], []
    for c in range(spec.classes):
        for i in range(spec.per_class):
            h = cents[:, c]
            if spec.noise > 0:
                jitter = spec.noise * (2.0 * rng.uniform_array(spec.dim) - 1.0)
                h = np.clip(h + jitter, 0.0, None)
                total = h.sum()
                h = h / total if total > 0 else cents[:, c]
            cols.append(h)
            labels.append(c)
            ids.append(f"synth-c{c}-{i:04d}")
    names = tuple(f"class{c}" for c in range(spec.classes))
    return FeatureMatrix(np.column_stack(cols), tuple(ids)), np.array(labels, dtype=np.int64), names
