"""Straight-line reference pipeline for the synthetic end-to-end experiment.

Deliberately plain: LAPACK (numpy.linalg) for the eigenproblems instead of
the package's Jacobi solver, explicit loops for SOM training and an
exhaustive search for the cluster mapping. It shares only the input data
and the documented conventions (SplitMix64 init, sign canonicalisation of
eigenvectors and left singular vectors) with the package.
"""

from __future__ import annotations

import itertools

import numpy as np


def _uniform(seed: int, count: int) -> list[float]:
    vals = []
    state = seed
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) % 2**64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % 2**64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % 2**64
        z = z ^ (z >> 31)
        vals.append((z >> 11) / 2.0**53)
    return vals


def _signed(vectors: np.ndarray) -> np.ndarray:
    out = vectors.copy()
    for j in range(out.shape[1]):
        lead = int(np.argmax(np.abs(out[:, j])))
        if out[lead, j] < 0:
            out[:, j] = -out[:, j]
    return out


def pca_features(x: np.ndarray, k: int) -> np.ndarray:
    mean = x.mean(axis=1, keepdims=True)
    c = x - mean
    values, vectors = np.linalg.eigh(c @ c.T)
    order = np.argsort(-values, kind="stable")
    basis = _signed(vectors[:, order[:k]])
    return basis.T @ c


def lsa_features(x: np.ndarray, k: int) -> np.ndarray:
    u, s, vt = np.linalg.svd(x, full_matrices=False)
    v = vt.T
    for j in range(u.shape[1]):
        lead = int(np.argmax(np.abs(u[:, j])))
        if u[lead, j] < 0:
            u[:, j] = -u[:, j]
            v[:, j] = -v[:, j]
    return (u[:, :k].T @ x) / s[:k, None]


def som_labels(features: np.ndarray, clusters: int, seed: int, alpha=0.5, epochs=500, eps=1e-6) -> list[int]:
    dim, m = features.shape
    flat = _uniform(seed, clusters * dim)
    w = [np.array(flat[j * dim : (j + 1) * dim]) for j in range(clusters)]
    columns = [features[:, i].copy() for i in range(m)]
    rate = alpha
    for _ in range(epochs):
        before = [row.copy() for row in w]
        for x in columns:
            best, best_d = 0, None
            for j in range(clusters):
                d = float(np.sum((w[j] - x) ** 2))
                if best_d is None or d < best_d:
                    best, best_d = j, d
            w[best] = w[best] + rate * (x - w[best])
        rate = rate * 0.5
        change = max(float(np.max(np.abs(w[j] - before[j]))) for j in range(clusters))
        if change < eps:
            break
    labels = []
    for x in columns:
        d = [float(np.sum((w[j] - x) ** 2)) for j in range(clusters)]
        labels.append(d.index(min(d)))
    return labels


def accuracy_percent(labels, truth, clusters: int, classes: int) -> int:
    counts = [[0] * classes for _ in range(clusters)]
    for p, t in zip(labels, truth):
        counts[p][int(t)] += 1
    best = 0
    for perm in itertools.permutations(range(classes), clusters):
        best = max(best, sum(counts[p][c] for p, c in enumerate(perm)))
    return 100 * best // len(labels)


def run(x: np.ndarray, truth, method: str, k: int, clusters: int, seed: int) -> int:
    feats = pca_features(x, k) if method == "pca" else lsa_features(x, k)
    labels = som_labels(feats, clusters, seed)
    return accuracy_percent(labels, truth, clusters, len(set(int(t) for t in truth)))
