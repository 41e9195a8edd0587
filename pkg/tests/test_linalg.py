import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from somclass.errors import NoConvergence, NotSymmetric
from somclass.linalg import jacobi_eigh, svd

from .oracles import charpoly_eigenvalues, eig2x2

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def symmetric(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    a = draw(arrays(np.float64, (n, n), elements=finite))
    return np.triu(a) + np.triu(a, 1).T


def test_diagonal_input():
    e = jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
    assert e.eigenvalues.tolist() == [3.0, 2.0, 1.0]
    assert np.array_equal(e.eigenvectors, np.eye(3)[:, [0, 2, 1]])
    assert e.sweeps == 0


def test_two_by_two_closed_form():
    e = jacobi_eigh([[2.0, 1.0], [1.0, 2.0]])
    hi, lo = eig2x2(2.0, 1.0, 2.0)
    assert (hi, lo) == (3.0, 1.0)
    assert np.allclose(e.eigenvalues, [hi, lo], atol=1e-14)
    r = 1 / math.sqrt(2)
    assert np.allclose(np.abs(e.eigenvectors), [[r, r], [r, r]], atol=1e-14)
    assert np.isclose(e.eigenvectors[:, 0] @ e.eigenvectors[:, 1], 0.0, atol=1e-15)
    assert e.eigenvectors[0, 0] * e.eigenvectors[1, 0] > 0  # (1, 1) direction for 3
    assert e.eigenvectors[0, 1] * e.eigenvectors[1, 1] < 0  # (1, -1) direction for 1


def test_random_3x3_matches_charpoly(rng):
    b = rng.uniform(-1, 1, (3, 3))
    a = b + b.T
    assert np.max(np.abs(jacobi_eigh(a).eigenvalues - charpoly_eigenvalues(a))) <= 1e-9


def test_ties_keep_index_order():
    e = jacobi_eigh(np.diag([1.0, 2.0, 1.0, 2.0]))
    assert np.array_equal(e.eigenvectors, np.eye(4)[:, [1, 3, 0, 2]])


def test_not_symmetric():
    with pytest.raises(NotSymmetric):
        jacobi_eigh([[1.0, 2.0], [2.1, 1.0]])
    with pytest.raises(NotSymmetric):
        jacobi_eigh(np.ones((2, 3)))


def test_no_convergence():
    with pytest.raises(NoConvergence):
        jacobi_eigh([[1.0, 0.5], [0.5, 1.0]], max_sweeps=0)


@given(symmetric())
def test_eigen_invariants(a):
    e = jacobi_eigh(a)
    n = a.shape[0]
    v, w = e.eigenvectors, e.eigenvalues
    peak = np.max(np.abs(a))
    norm = peak * np.linalg.norm(a / peak) if peak > 0 else 0.0
    assert np.all(np.diff(w) <= 0)
    assert np.max(np.abs(v.T @ v - np.eye(n))) <= 1e-8
    tiny = 8 * np.finfo(np.float64).smallest_subnormal  # subnormal inputs round in whole ulps
    assert np.max(np.abs(a @ v - v * w)) <= 1e-7 * norm + tiny
    assert abs(np.trace(a) - w.sum()) <= 1e-8 * n * norm + tiny


@given(symmetric())
def test_sign_canonical_and_repeatable(a):
    e1, e2 = jacobi_eigh(a), jacobi_eigh(a)
    assert np.array_equal(e1.eigenvalues, e2.eigenvalues)
    assert np.array_equal(e1.eigenvectors, e2.eigenvectors)
    v = e1.eigenvectors
    lead = np.argmax(np.abs(v), axis=0)
    assert np.all(v[lead, np.arange(v.shape[1])] > 0)


@given(symmetric(max_n=8))
def test_sweeps_reduce_off_norm(a):
    off = jacobi_eigh(a).off_norms
    assert all(b <= c for b, c in zip(off[1:], off[:-1]))


def test_svd_identity():
    d = svd(np.eye(2))
    assert np.allclose(d.s, [1.0, 1.0], atol=1e-15)
    assert np.allclose(d.u @ d.v.T, np.eye(2), atol=1e-15)


def test_svd_rank_one():
    d = svd([[1.0, 2.0], [2.0, 4.0]])
    # outer((1, 2), (1, 2)): sigma = |(1, 2)|^2 = 5
    assert np.allclose(d.s, [5.0, 0.0], atol=1e-7)
    assert d.rank == 1
    assert np.max(np.abs(d.u.T @ d.u - np.eye(2))) <= 1e-8
    recon = d.u * d.s @ d.v.T
    assert np.linalg.norm(recon - [[1, 2], [2, 4]]) <= 1e-7


def test_svd_random_reconstruction(rng):
    x = rng.standard_normal((4, 3))
    d = svd(x)
    assert d.u.shape == (4, 3) and d.v.shape == (3, 3)
    assert np.linalg.norm(d.u * d.s @ d.v.T - x) <= 1e-8 * np.linalg.norm(x)


matrices = st.tuples(st.integers(1, 7), st.integers(1, 7)).flatmap(
    lambda shape: arrays(np.float64, shape, elements=st.floats(-5, 5))
)


@given(matrices)
def test_svd_invariants(x):
    d = svd(x)
    r = min(x.shape)
    assert d.u.shape == (x.shape[0], r) and d.s.shape == (r,) and d.v.shape == (x.shape[1], r)
    assert np.all(d.s >= 0) and np.all(np.diff(d.s) <= 0)
    norm = np.linalg.norm(x)
    if norm > 0:
        assert np.linalg.norm(d.u * d.s @ d.v.T - x) <= 1e-8 * norm + 1e-12
    assert np.max(np.abs(d.v.T @ d.v - np.eye(r))) <= 1e-8
    assert np.max(np.abs(d.u.T @ d.u - np.eye(r))) <= 1e-8
    lead = np.argmax(np.abs(d.u), axis=0)
    assert np.all(d.u[lead, np.arange(r)] > 0)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_squared_singular_values_are_gram_eigenvalues(i, m, data):
    x = data.draw(arrays(np.float64, (i, m), elements=st.floats(-3, 3)))
    s2 = svd(x).s ** 2
    w = jacobi_eigh(x.T @ x).eigenvalues[: min(i, m)]
    scale = max(float(w[0]), 1e-300)
    assert np.max(np.abs(s2 - np.clip(w, 0, None))) <= 1e-8 * scale + 1e-300
