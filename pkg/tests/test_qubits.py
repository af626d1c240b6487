import numpy as np
import pytest
from hypothesis import given, strategies as st

from starwitness.errors import ContractViolation
from starwitness.linalg import hermitian_eigen
from starwitness.qubits import (
    BlochAngles,
    DensityOperator,
    PureState,
    basis_ket,
    bloch_ket,
    named_state,
    partial_trace,
    partial_transpose,
    tensor_states,
    trace_distance,
)

from conftest import random_density, random_ket


def reshape_partial_trace(m, n, keep):
    """Independent oracle: contract traced axes of the reshaped tensor with einsum."""
    letters = "abcdefgh"
    rows = list(letters[:n])
    cols = list(letters[n:2 * n])
    for q in range(n):
        if q not in keep:
            cols[q] = rows[q]
    out = "".join(rows[q] for q in keep) + "".join(cols[q] for q in keep)
    t = m.reshape([2] * (2 * n))
    return np.einsum("".join(rows) + "".join(cols) + "->" + out, t).reshape(2 ** len(keep), 2 ** len(keep))


@pytest.mark.parametrize("bits, index", [((0, 0, 0), 0), ((1, 1, 1, 1), 15), ((0, 0, 1, 0), 2)])
def test_basis_ket(bits, index):
    amps = basis_ket(bits).amplitudes
    assert amps[index] == 1 and np.count_nonzero(amps) == 1


def test_bloch_ket_examples():
    assert np.allclose(bloch_ket(BlochAngles(0.0, 1.3)).amplitudes, [1, 0])
    assert np.allclose(bloch_ket(BlochAngles(np.pi / 2, 0.0)).amplitudes, [0, 1])
    assert np.allclose(bloch_ket(BlochAngles(np.pi / 4, np.pi / 2)).amplitudes, np.array([1, -1j]) / np.sqrt(2))


def test_bloch_angles_range():
    with pytest.raises(ContractViolation):
        BlochAngles(4.0, 0.0)
    with pytest.raises(ContractViolation):
        BlochAngles(1.0, 2 * np.pi)


@given(st.floats(0, np.pi), st.floats(0, 2 * np.pi, exclude_max=True))
def test_bloch_ket_unit_norm(alpha, beta):
    amps = bloch_ket(BlochAngles(alpha, beta)).amplitudes
    assert abs(np.vdot(amps, amps).real - 1) < 1e-12


def test_tensor_states():
    k0, k1 = basis_ket([0]), basis_ket([1])
    assert np.array_equal(tensor_states([k0, k0, k0]).amplitudes, basis_ket([0, 0, 0]).amplitudes)
    assert tensor_states([k1, k0]).amplitudes[2] == 1
    t = np.pi / 4
    amps = tensor_states([bloch_ket(BlochAngles(t, 0.0))] * 3).amplitudes
    c, s = np.cos(t), np.sin(t)
    expected = [c**3, c * c * s, c * c * s, c * s * s, c * c * s, c * s * s, c * s * s, s**3]
    assert np.allclose(amps, expected)


def test_pure_state_rejects_unnormalized():
    with pytest.raises(ContractViolation):
        PureState(np.array([1.0, 1.0]))


def test_density_operator_rejects_negative():
    with pytest.raises(ContractViolation):
        DensityOperator(np.diag([1.1, -0.1]))


def test_density_operator_clips_roundoff():
    rho = DensityOperator(np.diag([1.0 + 5e-11, -5e-11]))
    assert np.min(hermitian_eigen(rho.matrix).values) >= 0
    assert abs(np.trace(rho.matrix) - 1) < 1e-12


def test_partial_trace_examples():
    rho = basis_ket([0, 0]).projector()
    assert np.allclose(partial_trace(rho, {1}).matrix, np.diag([1, 0]))
    bell = PureState.normalized([1, 0, 0, 1]).projector()
    assert np.allclose(partial_trace(bell, {0}).matrix, np.eye(2) / 2)
    assert np.allclose(partial_trace(bell, {1}).matrix, np.eye(2) / 2)
    ghz = named_state("GHZ").projector()
    assert np.allclose(partial_trace(ghz, {1, 2}).matrix, np.diag([0.5, 0, 0, 0.5]))
    with pytest.raises(ContractViolation):
        partial_trace(bell, set())


def test_partial_trace_matches_einsum_oracle(rng):
    for n in (2, 3, 4):
        rho = random_density(rng, n)
        for keep in ([0], [n - 1], [0, n - 1], list(range(1, n))):
            ours = partial_trace(rho, set(keep)).matrix
            assert np.allclose(ours, reshape_partial_trace(rho.matrix, n, keep), atol=1e-13)


def test_partial_trace_of_product(rng):
    for _ in range(20):
        a, b = random_density(rng, 1), random_density(rng, 2)
        joint = DensityOperator(np.kron(a.matrix, b.matrix))
        assert np.max(np.abs(partial_trace(joint, {0}).matrix - a.matrix)) < 1e-12
        assert np.max(np.abs(partial_trace(joint, {1, 2}).matrix - b.matrix)) < 1e-12


def test_partial_trace_preserves_trace_and_psd(rng):
    for k in range(100):
        rho = random_density(rng, 4, rank=1 + k % 16)
        red = partial_trace(rho, {1, 2, 3})
        assert abs(np.trace(red.matrix) - 1) < 1e-12
        assert hermitian_eigen(red.matrix).values[0] >= -1e-10


def test_partial_transpose_bell():
    bell = PureState.normalized([1, 0, 0, 1]).projector()
    values = hermitian_eigen(partial_transpose(bell, {0})).values
    assert np.allclose(values, [-0.5, 0.5, 0.5, 0.5])


def test_partial_transpose_product_stays_psd(rng):
    a, b = random_density(rng, 1), random_density(rng, 1)
    pt = partial_transpose(DensityOperator(np.kron(a.matrix, b.matrix)), {0})
    expected = np.kron(a.matrix.T, b.matrix)
    assert np.allclose(pt, expected)
    assert hermitian_eigen(pt).values[0] > -1e-12


def test_partial_transpose_structure(rng):
    for _ in range(20):
        rho = random_density(rng, 3)
        for part in ({0}, {1}, {2}, {0, 2}):
            pt = partial_transpose(rho, part)
            assert np.max(np.abs(pt - pt.conj().T)) < 1e-13
            assert abs(np.trace(pt) - 1) < 1e-13
            # involution on the raw matrix
            back = partial_transpose(_Raw(pt), part)
            assert np.allclose(back, rho.matrix, atol=1e-15)
    full = partial_transpose(rho, {0, 1, 2})
    assert np.allclose(full, rho.matrix.T)


class _Raw:
    """Duck-typed register wrapper for matrices that are not states."""

    def __init__(self, m):
        self.matrix = m
        self.num_qubits = int(np.log2(m.shape[0]))


def test_trace_distance_examples():
    k0, k1 = basis_ket([0]).projector(), basis_ket([1]).projector()
    mixed = DensityOperator(np.eye(2) / 2)
    assert trace_distance(k0, k0) == pytest.approx(0, abs=1e-15)
    assert trace_distance(k0, k1) == pytest.approx(1)
    assert trace_distance(mixed, k0) == pytest.approx(0.5)
    with pytest.raises(ContractViolation):
        trace_distance(k0, basis_ket([0, 0]).projector())


def test_named_states():
    s2, s3 = 1 / np.sqrt(2), 1 / np.sqrt(3)
    ghz = np.zeros(8); ghz[[0, 7]] = s2
    wt = np.zeros(8); wt[[6, 5, 3]] = s3
    sg = np.zeros(8); sg[[6, 1]] = s2
    w = np.zeros(8); w[[4, 2, 1]] = s3
    assert np.allclose(named_state("GHZ").amplitudes, ghz)
    assert np.allclose(named_state("Wtilde").amplitudes, wt)
    assert np.allclose(named_state("sigmaGHZ").amplitudes, sg)
    assert np.allclose(named_state("W").amplitudes, w)
    with pytest.raises(ContractViolation):
        named_state("cluster")


def test_mixture_is_valid(rng):
    rho = DensityOperator.mixture([0.3, 0.7], [named_state("W"), named_state("GHZ")])
    assert abs(np.trace(rho.matrix) - 1) < 1e-12
    assert rho.eigenvalues()[0] >= -1e-10
    with pytest.raises(ContractViolation):
        DensityOperator.mixture([0.5, 0.6], [named_state("W"), named_state("GHZ")])
    psi = random_ket(rng, 3)
    assert np.allclose(PureState(psi).projector().matrix, np.outer(psi, psi.conj()))
