"""Dense complex linear algebra on small matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The largest
object handled anywhere in the package is 16x16, so everything is dense
and row-major. The Hermitian eigensolver is a cyclic Jacobi scheme written
out by hand; it is the numerical oracle the closed-form spin-star spectrum
is checked against, so it deliberately does not call LAPACK.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContractViolation, ConvergenceError

HERMITIAN_TOL = 1e-12
EIGEN_RESIDUAL_TOL = 1e-10
MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex array (vectors become columns)."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.size == 0:
        raise ContractViolation(f"expected a nonempty matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ContractViolation("matrix contains NaN or Inf entries")
    return m


def _square(a: np.ndarray, what: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise ContractViolation(f"{what} requires a square matrix, got {a.shape}")


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ContractViolation(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; the first factor is the most significant index."""
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    a = as_matrix(a)
    _square(a, "trace")
    return complex(np.trace(a))


def hermiticity_defect(a) -> float:
    """Largest entrywise modulus of ``a - a^dagger``."""
    a = as_matrix(a)
    _square(a, "hermiticity check")
    return float(np.max(np.abs(a - a.conj().T)))


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with eigenvectors stored as the columns of ``vectors``."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T

    def projector(self, index) -> np.ndarray:
        """Orthogonal projector onto the span of the selected columns."""
        v = self.vectors[:, np.atleast_1d(index)]
        return v @ v.conj().T


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    # largest-magnitude component real and positive; first index wins ties
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        j = int(np.argmax(np.abs(col) - 1e-12 * np.arange(col.size)))
        out[:, k] = col * (abs(col[j]) / col[j])
    return out


def hermitian_eigen(a, tol: float = 1e-13, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the classic real Jacobi rotation, so ``a <- J^dagger a J`` stays
    Hermitian throughout. Sweeps stop once the off-diagonal Frobenius norm
    falls below ``tol * max(1, ||a||_F)``.
    """
    a = as_matrix(a)
    _square(a, "hermitian_eigen")
    defect = hermiticity_defect(a)
    if defect > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(a)))):
        raise ContractViolation(f"matrix is not Hermitian (max |A - A^dagger| = {defect:.3e})")

    n = a.shape[0]
    work = 0.5 * (a + a.conj().T)
    vecs = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(work)))
    threshold = tol * scale

    residual = _off_norm(work)
    sweeps = 0
    while residual > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (residual {residual:.3e})",
                residual,
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = work[p, q]
                mag = abs(g)
                if mag < 1e-300:
                    continue
                phase = g / mag
                tau = (work[q, q].real - work[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = [p, q]
                work[:, cols] = work[:, cols] @ rot
                work[cols, :] = rot.conj().T @ work[cols, :]
                work[p, q] = work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real
                vecs[:, cols] = vecs[:, cols] @ rot
        sweeps += 1
        residual = _off_norm(work)

    values = np.real(np.diag(work)).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], _fix_phases(vecs[:, order]))


def function_of_hermitian(
    a, f: Callable[[np.ndarray], np.ndarray], eig: EigenDecomposition | None = None
) -> np.ndarray:
    """Return ``V diag(f(lambda)) V^dagger``.

    ``f`` is applied to the whole eigenvalue array at once. Pass ``eig`` to
    reuse an existing (possibly closed-form) eigensystem of ``a``.
    """
    if eig is None:
        eig = hermitian_eigen(a)
    fvals = np.asarray(f(eig.values), dtype=float)
    return (eig.vectors * fvals) @ eig.vectors.conj().T
