import numpy as np
import pytest

from algebra import direct_sum
from numeric import seeded_rng
from states import State, gns, state_from_vector


@pytest.fixture
def rng():
    return seeded_rng(20240611)


@pytest.fixture
def pauli():
    return {
        "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
        "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
        "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    }


@pytest.fixture
def plus():
    return state_from_vector(np.array([1, 1]) / np.sqrt(2))


@pytest.fixture
def up():
    return state_from_vector([1, 0])


@pytest.fixture
def two_block():
    """M2 (+) M3 with a faithful state putting 1/4 on the first block."""
    alg = direct_sum([2, 3])
    omega = State(np.diag([0.125, 0.125, 0.25, 0.25, 0.25]).astype(np.complex128))
    return alg, omega, gns(alg, omega)
