import numpy as np
import pytest


def ginibre_density(rng, rank, count):
    g = rng.normal(size=(count, 4, rank)) + 1j * rng.normal(size=(count, 4, rank))
    m = g @ np.conj(np.swapaxes(g, -1, -2))
    return m / np.trace(m, axis1=-2, axis2=-1).real[:, None, None]


def random_hermitian(rng, count, n=4):
    g = rng.normal(size=(count, n, n)) + 1j * rng.normal(size=(count, n, n))
    return 0.5 * (g + np.conj(np.swapaxes(g, -1, -2)))


def random_unitary2(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
