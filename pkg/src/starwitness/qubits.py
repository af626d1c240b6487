"""Qubit registers: kets, density operators, partial trace and transpose.

Ordering convention: the first-listed qubit is the most significant bit of
the basis index, so ``|q0 q1 ... q_{n-1}>`` sits at index
``sum(q_k * 2**(n-1-k))``. Qubits are addressed by 0-based register position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import ContractViolation

NORM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


def _num_qubits(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if n < 1 or 2**n != dim:
        raise ContractViolation(f"dimension {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray
    num_qubits: int = field(init=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(amps)):
            raise ContractViolation("amplitudes contain NaN or Inf")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ContractViolation(f"state is not normalized (|psi|^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "num_qubits", _num_qubits(amps.size))

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(amps / np.linalg.norm(amps))

    def projector(self) -> "DensityOperator":
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityOperator:
    """Unit-trace Hermitian positive semidefinite matrix on a qubit register.

    Construction re-symmetrizes the input and clips eigenvalues in
    ``[-1e-10, 0)`` to zero (renormalizing afterwards); anything more
    negative is rejected.
    """

    matrix: np.ndarray
    num_qubits: int = field(init=False)

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise ContractViolation(f"density operator must be square, got {m.shape}")
        n = _num_qubits(m.shape[0])
        defect = linalg.hermiticity_defect(m)
        if defect > 1e-9:
            raise ContractViolation(f"density operator is not Hermitian (defect {defect:.3e})")
        m = 0.5 * (m + m.conj().T)
        tr = np.trace(m).real
        if abs(tr - 1.0) > 1e-9:
            raise ContractViolation(f"density operator trace is {tr!r}, expected 1")
        eig = linalg.hermitian_eigen(m)
        lowest = eig.values[0]
        if lowest < -PSD_TOL:
            raise ContractViolation(f"density operator has eigenvalue {lowest:.3e} < -{PSD_TOL}")
        if lowest < 0:
            vals = np.clip(eig.values, 0.0, None)
            m = (eig.vectors * vals) @ eig.vectors.conj().T
            m = 0.5 * (m + m.conj().T)
        m = m / np.trace(m).real
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "num_qubits", n)

    @classmethod
    def trusted(cls, matrix: np.ndarray) -> "DensityOperator":
        """Wrap a matrix that is PSD by construction, skipping the eigen check.

        Used for spectral sums with nonnegative weights and partial traces of
        already valid states. Hermiticity and trace are still enforced.
        """
        m = np.array(matrix, dtype=complex)
        m = 0.5 * (m + m.conj().T)
        m /= np.trace(m).real
        m.setflags(write=False)
        obj = object.__new__(cls)
        object.__setattr__(obj, "matrix", m)
        object.__setattr__(obj, "num_qubits", _num_qubits(m.shape[0]))
        return obj

    @classmethod
    def mixture(cls, weights: Sequence[float], states: Sequence) -> "DensityOperator":
        """Convex combination of pure states and/or density operators."""
        if len(weights) != len(states) or not states:
            raise ContractViolation("need one weight per state")
        w = np.asarray(weights, dtype=float)
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ContractViolation(f"mixture weights must be a probability vector, got {w}")
        total = 0
        for wk, s in zip(w, states):
            rho = s.projector() if isinstance(s, PureState) else s
            total = total + wk * rho.matrix
        return cls(total)

    def eigenvalues(self) -> np.ndarray:
        return linalg.hermitian_eigen(self.matrix).values


@dataclass(frozen=True)
class BlochAngles:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= np.pi):
            raise ContractViolation(f"alpha={self.alpha} outside [0, pi]")
        if not (0.0 <= self.beta < 2 * np.pi):
            raise ContractViolation(f"beta={self.beta} outside [0, 2pi)")


def basis_ket(bits: Sequence[int]) -> PureState:
    bits = [int(b) for b in bits]
    if not bits or any(b not in (0, 1) for b in bits):
        raise ContractViolation(f"bits must be a nonempty 0/1 sequence, got {bits}")
    index = 0
    for b in bits:
        index = 2 * index + b
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[index] = 1.0
    return PureState(amps)


def bloch_amplitudes(alpha, beta) -> np.ndarray:
    """``cos(alpha)|0> + exp(-i beta) sin(alpha)|1>``, broadcast over array inputs.

    The trailing axis of the result holds the two amplitudes. No range
    checks, so the witness quadrature can call it on whole grids.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    alpha, beta = np.broadcast_arrays(alpha, beta)
    return np.stack([np.cos(alpha) + 0j, np.exp(-1j * beta) * np.sin(alpha)], axis=-1)


def bloch_ket(angles: BlochAngles) -> PureState:
    return PureState(bloch_amplitudes(angles.alpha, angles.beta))


def tensor_states(factors: Iterable[PureState]) -> PureState:
    factors = list(factors)
    if not factors:
        raise ContractViolation("tensor_states needs at least one factor")
    amps = np.ones(1, dtype=complex)
    for f in factors:
        amps = np.kron(amps, f.amplitudes)
    return PureState.normalized(amps)


def _bits(index: int, n: int) -> list[int]:
    return [(index >> (n - 1 - k)) & 1 for k in range(n)]


def _index(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = 2 * out + b
    return out


def _check_qubits(qubits, n: int, allow_empty: bool) -> list[int]:
    qs = sorted({int(q) for q in qubits})
    if not qs and not allow_empty:
        raise ContractViolation("qubit set must be nonempty")
    if any(q < 0 or q >= n for q in qs):
        raise ContractViolation(f"qubit indices {qs} outside register of {n} qubits")
    return qs


def partial_trace(rho: DensityOperator, keep) -> DensityOperator:
    """Reduce ``rho`` to the qubits in ``keep`` (original relative order kept).

    Explicit index contraction: every kept row/column pair sums the diagonal
    of the traced-out block.
    """
    n = rho.num_qubits
    kept = _check_qubits(keep, n, allow_empty=False)
    traced = [q for q in range(n) if q not in kept]
    nk, nt = len(kept), len(traced)
    out = np.zeros((2**nk, 2**nk), dtype=complex)
    m = rho.matrix
    for i in range(2**nk):
        bi = _bits(i, nk)
        for j in range(2**nk):
            bj = _bits(j, nk)
            acc = 0j
            for t in range(2**nt):
                bt = _bits(t, nt)
                row = [0] * n
                col = [0] * n
                for q, b in zip(kept, bi):
                    row[q] = b
                for q, b in zip(kept, bj):
                    col[q] = b
                for q, b in zip(traced, bt):
                    row[q] = col[q] = b
                acc += m[_index(row), _index(col)]
            out[i, j] = acc
    return DensityOperator.trusted(out)


def partial_transpose(rho: DensityOperator, part) -> np.ndarray:
    """Transpose the tensor indices of the qubits in ``part``.

    Returns a raw matrix: the result is Hermitian but may have negative
    eigenvalues.
    """
    n = rho.num_qubits
    qs = _check_qubits(part, n, allow_empty=True)
    dim = 2**n
    m = rho.matrix
    out = np.empty_like(m)
    for r in range(dim):
        br = _bits(r, n)
        for c in range(dim):
            bc = _bits(c, n)
            nr, nc = list(br), list(bc)
            for q in qs:
                nr[q], nc[q] = bc[q], br[q]
            out[_index(nr), _index(nc)] = m[r, c]
    return out


def trace_distance(a: DensityOperator, b: DensityOperator) -> float:
    if a.matrix.shape != b.matrix.shape:
        raise ContractViolation(f"dimension mismatch {a.matrix.shape} vs {b.matrix.shape}")
    diff = a.matrix - b.matrix
    return 0.5 * float(np.sum(np.abs(linalg.hermitian_eigen(diff).values)))


_NAMED = {
    "GHZ": ("000", "111"),
    "W": ("100", "010", "001"),
    "Wtilde": ("110", "101", "011"),
    "sigmaGHZ": ("110", "001"),
}


def named_state(which: str) -> PureState:
    """One of the three-qubit reference states ``GHZ``, ``W``, ``Wtilde``, ``sigmaGHZ``."""
    try:
        words = _NAMED[which]
    except KeyError:
        raise ContractViolation(f"unknown named state {which!r}; choose from {sorted(_NAMED)}") from None
    amps = sum(basis_ket([int(ch) for ch in w]).amplitudes for w in words)
    return PureState.normalized(amps)
