"""Symmetric eigendecomposition by cyclic Jacobi rotations, and an SVD built on it.

The Jacobi solver is the classical cyclic-by-row variant: each sweep rotates
away every off-diagonal entry (p, q), p < q, in row order. A rotation removes
exactly ``2 * a_pq**2`` of off-diagonal mass, so the off-diagonal norm is
non-increasing sweep over sweep. The sweep kernel is compiled with numba.

The SVD follows the Gram route: V holds the eigenvectors of ``X^T X`` and
``U = X V S^-1``. The Jacobi rotations for ``X^T X`` are applied one-sided to
the columns of X, so the singular values come out as column norms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import BadDimension, NoConvergence, NotSymmetric

CONVERGENCE_TOL = 1e-12
MAX_SWEEPS = 100
SYMMETRY_TOL = 1e-12
RANK_CUTOFF = 1e-10

# residual norm a completion candidate must keep after projection
_COMPLETION_MIN_NORM = 1e-6


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0
    off_norms: tuple[float, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class SvdDecomposition:
    u: np.ndarray
    s: np.ndarray
    v: np.ndarray

    @property
    def rank(self) -> int:
        return numerical_rank(self.s)


def numerical_rank(s: np.ndarray) -> int:
    """Count singular values above ``RANK_CUTOFF * s_max``."""
    if s.size == 0 or s[0] <= 0:
        return 0
    return int(np.count_nonzero(s > RANK_CUTOFF * s[0]))


def canonicalize_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (first on ties) is positive."""
    out = vectors.copy()
    if out.size == 0:
        return out
    lead = np.argmax(np.abs(out), axis=0)
    signs = np.where(out[lead, np.arange(out.shape[1])] < 0, -1.0, 1.0)
    return out * signs


@numba.njit(cache=True)
def _sweep(a: np.ndarray, v: np.ndarray) -> None:
    """One cyclic-by-row sweep of Jacobi rotations over all pairs p < q, in place."""
    n = a.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            if apq == 0.0:
                continue
            app = a[p, p]
            aqq = a[q, q]
            theta = (aqq - app) / (2.0 * apq)
            if abs(theta) > 1e150:
                t = 0.5 / theta
            else:
                sign = 1.0 if theta >= 0.0 else -1.0
                t = sign / (abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # A <- A J on columns p, q, then A <- J^T A on rows p, q
            for k in range(n):
                akp = a[k, p]
                akq = a[k, q]
                a[k, p] = akp * c - akq * s
                a[k, q] = akp * s + akq * c
            for k in range(n):
                apk = a[p, k]
                aqk = a[q, k]
                a[p, k] = apk * c - aqk * s
                a[q, k] = apk * s + aqk * c
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            a[p, q] = 0.0
            a[q, p] = 0.0
            for k in range(n):
                vkp = v[k, p]
                vkq = v[k, q]
                v[k, p] = vkp * c - vkq * s
                v[k, q] = vkp * s + vkq * c


def frobenius(a: np.ndarray) -> float:
    """Frobenius norm, scaled so tiny entries do not underflow when squared."""
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0:
        return 0.0
    b = a / scale
    return scale * float(np.sqrt(np.sum(b * b)))


def off_diagonal_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return frobenius(off)


def _check_symmetric(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotSymmetric("matrix has non-finite entries")
    gap = np.abs(a - a.T)
    if np.any(gap > SYMMETRY_TOL * np.maximum(1.0, np.abs(a))):
        raise NotSymmetric(f"matrix is not symmetric (max asymmetry {gap.max():.3e})")


def jacobi_eigh(a, tol: float = CONVERGENCE_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix.

    Eigenvalues come back in descending order (ties keep their diagonal
    position order) with sign-canonical orthonormal eigenvectors as columns.
    Iteration stops once the off-diagonal Frobenius norm is at most
    ``tol * ||A||_F``.

    Raises:
        NotSymmetric: input is not square or not symmetric within tolerance.
        NoConvergence: tolerance not met after ``max_sweeps`` sweeps.
    """
    a = np.array(a, dtype=np.float64)
    _check_symmetric(a)
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    target = tol * frobenius(a)

    off = off_diagonal_norm(a)
    history = [off]
    sweeps = 0
    while off > target:
        if sweeps == max_sweeps:
            raise NoConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
            )
        _sweep(a, v)
        sweeps += 1
        off = off_diagonal_norm(a)
        history.append(off)

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(
        eigenvalues=w[order],
        eigenvectors=canonicalize_signs(v[:, order]),
        sweeps=sweeps,
        off_norms=tuple(history),
    )


def _complete_columns(u: np.ndarray, filled: np.ndarray) -> np.ndarray:
    """Fill the unfilled columns of ``u`` with an orthonormal completion.

    Standard basis vectors are tried in order and kept when their residual
    after two rounds of Gram-Schmidt is large enough.
    """
    u = u.copy()
    basis = [u[:, j] for j in np.flatnonzero(filled)]
    candidate = 0
    rows = u.shape[0]
    for j in np.flatnonzero(~filled):
        while True:
            if candidate >= rows:
                raise NoConvergence("could not complete an orthonormal basis")
            w = np.zeros(rows)
            w[candidate] = 1.0
            candidate += 1
            for _ in range(2):
                for b in basis:
                    w -= (b @ w) * b
            norm = np.linalg.norm(w)
            if norm > _COMPLETION_MIN_NORM:
                break
        w = canonicalize_signs((w / norm)[:, None])[:, 0]
        u[:, j] = w
        basis.append(w)
    return u


@numba.njit(cache=True)
def _one_sided_sweep(w: np.ndarray, v: np.ndarray, tol: float, floor: float) -> int:
    """Rotate row pairs of ``w`` (rows = columns of X) towards mutual orthogonality.

    Each rotation is the Jacobi rotation for the 2x2 block of the implicit
    Gram matrix ``X^T X``. Pairs involving a column whose squared norm is at
    most ``floor`` are skipped: such columns sit at rounding level and cannot
    be made relatively orthogonal. Returns the number of rotations applied.
    """
    m, n = w.shape
    rotations = 0
    for p in range(m - 1):
        for q in range(p + 1, m):
            app = 0.0
            aqq = 0.0
            apq = 0.0
            for k in range(n):
                app += w[p, k] * w[p, k]
                aqq += w[q, k] * w[q, k]
                apq += w[p, k] * w[q, k]
            if apq == 0.0 or app <= floor or aqq <= floor:
                continue
            if abs(apq) <= tol * np.sqrt(app) * np.sqrt(aqq):
                continue
            rotations += 1
            theta = (aqq - app) / (2.0 * apq)
            if abs(theta) > 1e150:
                t = 0.5 / theta
            else:
                sign = 1.0 if theta >= 0.0 else -1.0
                t = sign / (abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):
                wpk = w[p, k]
                wqk = w[q, k]
                w[p, k] = wpk * c - wqk * s
                w[q, k] = wpk * s + wqk * c
            for k in range(m):
                vpk = v[p, k]
                vqk = v[q, k]
                v[p, k] = vpk * c - vqk * s
                v[q, k] = vpk * s + vqk * c
    return rotations


def _svd_tall(x, max_sweeps: int):
    """One-sided Jacobi on a tall ``x``; returns ``(u, s, v, rank)`` with raw signs."""
    rows, m = x.shape
    scale = float(np.max(np.abs(x)))
    if scale == 0.0:
        return np.eye(rows, m), np.zeros(m), np.eye(m), 0
    # rows of w are the columns of X / scale; rows of vt are the columns of V
    w = np.ascontiguousarray(x.T / scale)
    vt = np.eye(m)
    tol = max(m, 2) * np.finfo(np.float64).eps
    eps = np.finfo(np.float64).eps
    for _ in range(max_sweeps):
        floor = (eps * float(np.max(np.sqrt(np.sum(w * w, axis=1))))) ** 2
        if _one_sided_sweep(w, vt, tol, floor) == 0:
            break
    else:
        raise NoConvergence(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")

    norms = np.sqrt(np.sum(w * w, axis=1))
    order = np.argsort(-norms, kind="stable")
    v = vt[order].T
    xv = w[order].T
    s = norms[order]
    rank = numerical_rank(s)
    keep = np.arange(m) < rank
    u = np.zeros((rows, m))
    u[:, keep] = xv[:, keep] / s[keep]
    if rank < m:
        u = _complete_columns(u, keep)
    return u, s * scale, v, rank


def svd(x, max_sweeps: int = MAX_SWEEPS) -> SvdDecomposition:
    """Thin SVD ``X = U diag(S) V^T`` with ``r = min(i, m)`` components.

    V diagonalises ``X^T X`` through cyclic Jacobi rotations, applied one-sided
    to the columns of X so the Gram matrix is never formed (forming it would
    square the condition number). The rotated columns are ``X V``; their
    norms are the singular values and ``U = X V S^-1``. Columns whose singular
    value falls below the rank cutoff get an orthonormal completion. A wide
    matrix is handled through its transpose.

    Signs: U columns are canonical and V follows, so U does not depend on
    the column order of X. Pairs with a null singular value are canonicalised
    separately.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
        raise BadDimension(f"svd needs a non-empty 2-D matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise BadDimension("svd input has non-finite entries")
    if x.shape[0] >= x.shape[1]:
        u, s, v, rank = _svd_tall(x, max_sweeps)
    else:
        v, s, u, rank = _svd_tall(x.T, max_sweeps)

    r = len(s)
    lead = np.argmax(np.abs(u), axis=0)
    signs = np.where(u[lead, np.arange(r)] < 0, -1.0, 1.0)
    u = u * signs
    v = v * signs
    if rank < r:
        u[:, rank:] = canonicalize_signs(u[:, rank:])
        v[:, rank:] = canonicalize_signs(v[:, rank:])
    return SvdDecomposition(u=u, s=s, v=v)
