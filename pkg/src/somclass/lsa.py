"""Latent semantic analysis (truncated SVD) feature selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, DimensionMismatch, RankTooLow
from .features import FeatureMatrix
from .linalg import svd


@dataclass(frozen=True)
class LsaModel:
    u_k: np.ndarray
    s_k: np.ndarray

    @property
    def k(self) -> int:
        return self.s_k.shape[0]

    @property
    def dim(self) -> int:
        return self.u_k.shape[0]


def fit_lsa(x: FeatureMatrix, k: int) -> LsaModel:
    """Keep the top ``k`` left singular vectors and values of ``x``.

    ``x`` is decomposed as is, without centering.
    """
    if not 1 <= k <= x.rows:
        raise BadDimension(f"k must be in [1, {x.rows}], got {k}")
    dec = svd(x.data)
    if k > dec.rank:
        raise RankTooLow(f"k={k} exceeds the numerical rank {dec.rank} of the feature matrix")
    return LsaModel(u_k=dec.u[:, :k].copy(), s_k=dec.s[:k].copy())


def project_lsa(model: LsaModel, q: FeatureMatrix) -> FeatureMatrix:
    """Fold columns into the latent space: ``S_k^-1 U_k^T q_j``."""
    if q.rows != model.dim:
        raise DimensionMismatch(f"model expects {model.dim} rows, got {q.rows}")
    return FeatureMatrix((model.u_k.T @ q.data) / model.s_k[:, None], q.column_ids)
