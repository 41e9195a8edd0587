import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from somclass.errors import InvalidSpec
from somclass.synth import SynthSpec, centroids, generate, max_separation


def test_standard_corpus_shape():
    x, y, names = generate(SynthSpec(classes=5, per_class=50, dim=256, seed=1))
    assert (x.rows, x.cols) == (256, 250)
    assert np.bincount(y).tolist() == [50] * 5
    assert names == ("class0", "class1", "class2", "class3", "class4")


def test_zero_noise_is_centroid():
    spec = SynthSpec(classes=3, per_class=4, dim=30, noise=0.0, separation=0.2)
    x, y, _ = generate(spec)
    cents = centroids(spec)
    for col, c in zip(x.data.T, y):
        assert np.array_equal(col, cents[:, c])
    assert np.allclose(x.data.sum(axis=0), 1.0, atol=1e-9)


def test_deterministic():
    a, _, _ = generate(SynthSpec(seed=9))
    b, _, _ = generate(SynthSpec(seed=9))
    c, _, _ = generate(SynthSpec(seed=10))
    assert np.array_equal(a.data, b.data)
    assert not np.array_equal(a.data, c.data)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"classes": 1},
        {"per_class": 0},
        {"separation": 0.0},
        {"noise": -0.1},
        {"separation": 5.0},
        {"classes": 10, "dim": 5},
    ],
)
def test_invalid(kwargs):
    with pytest.raises(InvalidSpec):
        SynthSpec(**kwargs)


specs = st.builds(
    lambda classes, per_class, dim, frac, noise, seed: SynthSpec(
        classes=classes,
        per_class=per_class,
        dim=dim,
        separation=frac * max_separation(classes, dim),
        noise=noise,
        seed=seed,
    ),
    st.integers(2, 6),
    st.integers(1, 5),
    st.integers(12, 64),
    st.floats(0.05, 1.0),
    st.floats(0.0, 0.2),
    st.integers(0, 2**64 - 1),
)


@given(specs)
def test_columns_are_histograms(spec):
    x, _, _ = generate(spec)
    assert np.all(x.data >= 0)
    assert np.allclose(x.data.sum(axis=0), 1.0, rtol=0, atol=1e-9)


@given(specs)
def test_centroid_separation(spec):
    cents = centroids(spec)
    for a in range(spec.classes):
        for b in range(a + 1, spec.classes):
            assert np.linalg.norm(cents[:, a] - cents[:, b]) >= spec.separation - 1e-12


def test_spread_grows_with_noise():
    def spread(noise):
        x, y, _ = generate(SynthSpec(noise=noise, seed=4))
        cols = x.data[:, y == 0]
        return np.linalg.norm(cols - cols.mean(axis=1, keepdims=True))

    assert spread(0.0) < 1e-12 < spread(0.002) < spread(0.01)
