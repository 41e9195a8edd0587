"""Principal component feature selection on histogram columns."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, DimensionMismatch, NoConvergence, TooFewImages
from .features import FeatureMatrix
from .linalg import jacobi_eigh

# negative eigenvalues of a PSD scatter matrix closer to zero than this are rounding noise
NEGATIVE_EIGEN_TOL = 1e-10


@dataclass(frozen=True)
class PcaModel:
    """Mean vector, top-k eigenbasis (columns) and the full scatter spectrum."""

    mean: np.ndarray
    basis: np.ndarray
    eigenvalues: np.ndarray
    spectrum: np.ndarray

    @property
    def k(self) -> int:
        return self.basis.shape[1]

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


def scatter_matrix(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return the column mean and the unnormalised scatter ``sum_j c_j c_j^T``."""
    mean = x.mean(axis=1)
    centered = x - mean[:, None]
    return mean, centered @ centered.T


def fit_pca(x: FeatureMatrix, k: int) -> PcaModel:
    """Fit a ``k``-component PCA basis to the columns of ``x``.

    The scatter matrix is left unnormalised (no 1/m); that rescales the
    eigenvalues only. With zero variance the eigensolver returns the
    identity, so the basis is the leading standard basis vectors.
    """
    if not 1 <= k <= x.rows:
        raise BadDimension(f"k must be in [1, {x.rows}], got {k}")
    if x.cols < 2:
        raise TooFewImages(f"PCA needs at least 2 images, got {x.cols}")
    mean, scatter = scatter_matrix(x.data)
    eig = jacobi_eigh(scatter)
    values = eig.eigenvalues
    floor = -NEGATIVE_EIGEN_TOL * max(1.0, float(values[0]))
    if values[-1] < floor:
        raise NoConvergence(f"scatter matrix has eigenvalue {values[-1]:.3e} < 0")
    spectrum = np.clip(values, 0.0, None)
    return PcaModel(
        mean=mean,
        basis=eig.eigenvectors[:, :k].copy(),
        eigenvalues=spectrum[:k].copy(),
        spectrum=spectrum,
    )


def project_pca(model: PcaModel, x: FeatureMatrix) -> FeatureMatrix:
    """Map each column to ``basis^T (x_j - mean)``."""
    if x.rows != model.dim:
        raise DimensionMismatch(f"model expects {model.dim} rows, got {x.rows}")
    centered = x.data - model.mean[:, None]
    # one product per component, so a k-prefix of the basis yields bit-identical rows
    rows = [np.ascontiguousarray(model.basis[:, i]) @ centered for i in range(model.k)]
    return FeatureMatrix(np.array(rows), x.column_ids)
