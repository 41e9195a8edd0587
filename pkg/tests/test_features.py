import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from somclass.errors import DuplicateId, EmptyImage, EmptyInput
from somclass.features import assemble_matrix, compute_histogram
from somclass.imageio import GrayImage


def _gray(values, shape=None):
    arr = np.array(values, dtype=np.uint8)
    return GrayImage(arr.reshape(shape or (1, arr.size)))


def test_single_intensity():
    h = compute_histogram(_gray([7, 7, 7, 7], (2, 2)))
    assert h.shape == (256,)
    assert h[7] == 1.0
    assert np.count_nonzero(h) == 1


@pytest.mark.parametrize(
    "pixels, expected",
    [([0, 0, 255, 255], {0: 0.5, 255: 0.5}), ([1, 2, 2, 3], {1: 0.25, 2: 0.5, 3: 0.25})],
)
def test_direct_counts(pixels, expected):
    h = compute_histogram(_gray(pixels))
    for b, v in expected.items():
        assert h[b] == v
    assert np.count_nonzero(h) == len(expected)


def test_empty_image():
    with pytest.raises(EmptyImage):
        compute_histogram(GrayImage(np.zeros((0, 3), dtype=np.uint8)))


def test_assemble_singleton_and_corpus_shape(rng):
    h = compute_histogram(_gray(rng.integers(0, 256, 64)))
    one = assemble_matrix([("a", h)])
    assert (one.rows, one.cols) == (256, 1)
    assert np.array_equal(one.data[:, 0], h)
    many = assemble_matrix([(f"img{i}", h) for i in range(250)])
    assert (many.rows, many.cols) == (256, 250)
    assert many.column_ids[17] == "img17"


def test_assemble_errors():
    h = np.full(256, 1 / 256)
    with pytest.raises(DuplicateId):
        assemble_matrix([("a", h), ("a", h)])
    with pytest.raises(EmptyInput):
        assemble_matrix([])


images = arrays(np.uint8, st.tuples(st.integers(1, 8), st.integers(1, 8)))


@given(images, st.randoms(use_true_random=False))
def test_permutation_invariance(pixels, random):
    flat = pixels.ravel().tolist()
    random.shuffle(flat)
    shuffled = np.array(flat, dtype=np.uint8).reshape(pixels.shape)
    assert np.array_equal(compute_histogram(GrayImage(pixels)), compute_histogram(GrayImage(shuffled)))


@given(st.lists(images, min_size=1, max_size=6))
def test_columns_sum_to_one(imgs):
    m = assemble_matrix([(str(i), compute_histogram(GrayImage(p))) for i, p in enumerate(imgs)])
    assert np.all(m.data >= 0)
    assert np.allclose(m.data.sum(axis=0), 1.0, rtol=0, atol=1e-9)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_concatenation_is_mean(h, w, data):
    a = data.draw(arrays(np.uint8, (h, w)))
    b = data.draw(arrays(np.uint8, (h, w)))
    both = compute_histogram(GrayImage(np.concatenate([a, b], axis=0)))
    mean = 0.5 * (compute_histogram(GrayImage(a)) + compute_histogram(GrayImage(b)))
    assert np.max(np.abs(both - mean)) <= 1e-12
