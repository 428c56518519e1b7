import numpy as np
import pytest

from cliffordspec.matrices import HermitianTuple, float_matrix


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def random_tuple(rng, d, n):
    return HermitianTuple([float_matrix(random_hermitian(rng, n)) for _ in range(d)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
