import numpy as np
import pytest

import qht


@pytest.fixture
def commuting():
    return qht.preset_pair("commuting-1")


@pytest.fixture
def identical():
    return qht.preset_pair("identical")


@pytest.fixture
def generic():
    return qht.preset_pair("qubit-generic")


def seeded_pairs(count, start=0, dim=2):
    return [qht.random_pair(start + k, dim) for k in range(count)]


def seeded_diagonal_pairs(count, start=0, dim=2):
    return [qht.random_diagonal_pair(start + k, dim) for k in range(count)]


def rng_hermitian(seed, dim):
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (G + G.conj().T) / 2.0
