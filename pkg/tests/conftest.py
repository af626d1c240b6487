import numpy as np
import pytest
from hypothesis import settings

from starwitness.qubits import DensityOperator

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20100521)


def random_ket(rng, n_qubits):
    v = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return v / np.linalg.norm(v)


def random_density(rng, n_qubits, rank=None):
    dim = 2**n_qubits
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real)


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def permute_qubits(vec, perm):
    """Reorder the tensor factors of a 3-qubit ket: new qubit k is old qubit perm[k]."""
    return np.transpose(vec.reshape(2, 2, 2), perm).reshape(8)


def random_biseparable(rng):
    """Random biseparable 3-qubit state: product, 2|1 in some placement, or a mixture."""
    kind = rng.integers(3)

    def pure():
        if rng.integers(4) == 0:
            v = np.kron(np.kron(random_ket(rng, 1), random_ket(rng, 1)), random_ket(rng, 1))
        else:
            v = np.kron(random_ket(rng, 1), random_ket(rng, 2))
            perm = [(0, 1, 2), (1, 0, 2), (1, 2, 0)][rng.integers(3)]
            v = permute_qubits(v, perm)
        return np.outer(v, v.conj())

    if kind < 2:
        return DensityOperator(pure())
    w = rng.dirichlet(np.ones(4))
    return DensityOperator(sum(wk * pure() for wk in w))
