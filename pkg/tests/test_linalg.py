import numpy as np
import pytest
from hypothesis import given, strategies as st

from starwitness import linalg
from starwitness.errors import ContractViolation, ConvergenceError
from starwitness.spinstar import SpinStarParams, hamiltonian

from conftest import random_hermitian

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]])
# basis order (|1>, |0>) for the raising/lowering pair below
S_PLUS = np.array([[0, 1], [0, 0]])
S_MINUS = S_PLUS.T


def test_matmul_identities():
    assert np.array_equal(linalg.matmul(I2, I2), I2)
    assert np.array_equal(linalg.matmul(SX, SX), I2)
    assert np.array_equal(linalg.matmul(S_PLUS, S_MINUS), np.diag([1, 0]))


def test_matmul_dimension_mismatch():
    with pytest.raises(ContractViolation):
        linalg.matmul(np.ones((2, 3)), np.ones((2, 3)))


def test_kron_examples():
    assert np.array_equal(linalg.kron(I2, I2), np.eye(4))
    z = np.diag([1, -1])
    assert np.array_equal(linalg.kron(z, z), np.diag([1, -1, -1, 1]))
    ket0, ket1 = np.array([1, 0]), np.array([0, 1])
    assert np.array_equal(linalg.kron(ket0, ket1).ravel(), [0, 1, 0, 0])


def test_kron_associative(rng):
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    left = linalg.kron(linalg.kron(a, b), c)
    right = linalg.kron(a, linalg.kron(b, c))
    assert np.max(np.abs(left - right)) < 1e-14


def test_dagger(rng):
    assert np.array_equal(linalg.dagger(I2), I2)
    assert np.array_equal(linalg.dagger(np.array([1, 1j])), np.array([[1, -1j]]))
    a = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
    assert np.array_equal(linalg.dagger(linalg.dagger(a)), a)


def test_trace(rng):
    assert linalg.trace(np.eye(16)) == 16
    with pytest.raises(ContractViolation):
        linalg.trace(np.ones((2, 3)))
    for _ in range(20):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert abs(linalg.trace(a @ b) - linalg.trace(b @ a)) < 1e-12


def test_rejects_nonfinite():
    with pytest.raises(ContractViolation):
        linalg.as_matrix([[np.nan, 0], [0, 1]])


def test_eigen_diagonal():
    e = linalg.hermitian_eigen(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(e.values, [1, 2, 3])
    assert np.allclose(np.abs(e.vectors), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_eigen_pauli_x():
    e = linalg.hermitian_eigen(SX)
    assert np.allclose(e.values, [-1, 1])
    # phase convention: largest component real positive, first index on ties
    assert np.allclose(e.vectors[:, 0], np.array([1, -1]) / np.sqrt(2))
    assert np.allclose(e.vectors[:, 1], np.array([1, 1]) / np.sqrt(2))


def test_eigen_spin_star_ground_energy():
    values = linalg.hermitian_eigen(hamiltonian(SpinStarParams(c=1.0, x=1.0))).values
    assert abs(values[0] - (-(np.sqrt(3) + 1))) < 1e-10


def test_eigen_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        linalg.hermitian_eigen(np.array([[0, 1], [0, 0]]))


def test_eigen_convergence_error_carries_residual(rng):
    with pytest.raises(ConvergenceError) as info:
        linalg.hermitian_eigen(random_hermitian(rng, 8), max_sweeps=1)
    assert info.value.residual > 0


def test_eigen_reconstruction_many(rng):
    for _ in range(100):
        a = random_hermitian(rng, 16)
        e = linalg.hermitian_eigen(a)
        assert np.max(np.abs(e.reconstruct() - a)) < 1e-9
        assert np.max(np.abs(e.vectors.conj().T @ e.vectors - np.eye(16))) < 1e-10
        assert np.max(np.abs(a @ e.vectors - e.vectors * e.values)) < 1e-10
        assert np.all(np.diff(e.values) >= 0)


def test_eigen_degenerate_cluster_orthonormal(rng):
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    a = q @ np.diag([1.0, 1.0, 1.0, 2.0, 2.0, -3.0]) @ q.conj().T
    e = linalg.hermitian_eigen(a)
    assert np.allclose(e.values, [-3, 1, 1, 1, 2, 2])
    assert np.max(np.abs(e.vectors.conj().T @ e.vectors - np.eye(6))) < 1e-10


def test_function_of_hermitian():
    assert np.allclose(linalg.function_of_hermitian(np.diag([1.0, 2.0]), lambda v: v), np.diag([1, 2]))
    assert np.allclose(linalg.function_of_hermitian(np.zeros((3, 3)), np.exp), np.eye(3))
    out = linalg.function_of_hermitian(np.diag([0.0, 1.0]), lambda v: np.exp(-v / 0.5))
    assert np.allclose(out, np.diag([1, np.exp(-2)]))


@given(st.lists(st.floats(-50, 50), min_size=2, max_size=6), st.integers(0, 2**32 - 1))
def test_eigen_recovers_planted_spectrum(values, seed):
    rng = np.random.default_rng(seed)
    n = len(values)
    q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    a = q @ np.diag(values) @ q.conj().T
    a = 0.5 * (a + a.conj().T)
    e = linalg.hermitian_eigen(a)
    assert np.allclose(e.values, np.sort(values), atol=1e-9)
