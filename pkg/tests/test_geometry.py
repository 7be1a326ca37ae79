import numpy as np

from vortexmc.geometry import as_vec2, perp, reflect


def test_perp_exact():
    assert np.array_equal(perp([3.0, -2.0]), [2.0, 3.0])
    assert np.array_equal(perp([0.0, 1.0]), [-1.0, 0.0])


def test_reflect_exact():
    assert np.array_equal(reflect([3.0, -2.0]), [3.0, 2.0])
    assert np.array_equal(reflect([1.5, 0.0]), [1.5, 0.0])


def test_batch_shapes():
    z = np.arange(10.0).reshape(5, 2)
    assert perp(z).shape == (5, 2)
    assert np.array_equal(perp(z)[:, 0], -z[:, 1])
    assert np.array_equal(reflect(reflect(z)), z)


def test_perp_is_rotation(rng):
    z = rng.normal(size=(100, 2))
    p = perp(z)
    # orthogonal, same length, and a quarter turn counterclockwise
    assert np.all(np.abs(np.sum(p * z, axis=1)) == 0.0)
    assert np.array_equal(np.hypot(p[:, 0], p[:, 1]), np.hypot(z[:, 0], z[:, 1]))
    cross = z[:, 0] * p[:, 1] - z[:, 1] * p[:, 0]
    assert np.all(cross > 0.0)


def test_as_vec2_rejects_bad_shape():
    import pytest

    with pytest.raises(ValueError):
        as_vec2([1.0, 2.0, 3.0])
