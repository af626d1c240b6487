"""Four-spin star: a central spin 0 exchange-coupled to peripheral spins 1, 2, 3.

    H = (omega0/2) sum_k sz_k + sum_{k=1..3} c_k (s+_0 s-_k + s-_0 s+_k)

with c_1 = c_3 = c and c_2 = c*x.

Basis convention: ``sz|0> = -|0>`` and ``sz|1> = +|1>``, so ``|0000>`` has
energy ``-2*omega0`` and ``s+`` maps ``|0>`` to ``|1>``. Flipping this
convention silently mirrors the whole spectrum, so every closed-form
eigenvector below is written for it. Register order is (spin 0, spin 1,
spin 2, spin 3), first spin most significant.

Labels follow the closed-form energy formulas: ``"4-"`` always means the
level at ``-(c*sqrt(2+x^2) + omega0)``. That level lives in the
one-excitation sector, and ``"5-"`` (``omega0 - c*sqrt(2+x^2)``) in the
three-excitation sector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import AnalyticDomainError, ContractViolation, NoCrossingError
from .linalg import EigenDecomposition, hermitian_eigen
from .qubits import DensityOperator, PureState, basis_ket, partial_trace

X_MIN_ANALYTIC = 1e-6
DEGENERACY_TOL = 1e-12

LABELS = ("1+", "1-", "2+", "2-", "3+", "3-", "4+", "4-", "5+", "5-",
          "6a", "6b", "7a", "7b", "8", "9")

_SZ = np.diag([-1.0, 1.0]).astype(complex)
_SPLUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |1><0|
_SMINUS = _SPLUS.T.copy()
_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class SpinStarParams:
    c: float
    x: float = 1.0
    kT: float = 1.0
    omega0: float = 1.0

    def __post_init__(self):
        for name in ("c", "kT", "omega0"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ContractViolation(f"{name} must be positive, got {value}")
        if not np.isfinite(self.x) or self.x < 0:
            raise ContractViolation(f"x must be nonnegative, got {self.x}")

    def couplings(self) -> tuple[float, float, float]:
        return (self.c, self.c * self.x, self.c)


def _site_operator(op: np.ndarray, site: int) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for k in range(4):
        out = linalg.kron(out, op if k == site else _I2)
    return out


def hamiltonian(p: SpinStarParams) -> np.ndarray:
    h = 0.5 * p.omega0 * sum(_site_operator(_SZ, k) for k in range(4))
    for k, ck in zip((1, 2, 3), p.couplings()):
        hop = linalg.matmul(_site_operator(_SPLUS, 0), _site_operator(_SMINUS, k))
        h = h + ck * (hop + linalg.dagger(hop))
    return h


def total_sz() -> np.ndarray:
    return sum(_site_operator(_SZ, k) for k in range(4))


def analytic_energies(p: SpinStarParams) -> dict[str, float]:
    """Closed-form energies keyed by label; valid for every x >= 0."""
    c, x, w = p.c, p.x, p.omega0
    s = np.sqrt(2 + x * x)
    r = np.sqrt(8 + x * x)
    return {
        "1+": c * x, "1-": -c * x,
        "2+": 0.5 * c * (x + r), "2-": -0.5 * c * (x + r),
        "3+": 0.5 * c * (x - r), "3-": -0.5 * c * (x - r),
        "4+": c * s + w, "4-": -(c * s + w),
        "5+": c * s - w, "5-": -(c * s - w),
        "6a": -w, "6b": -w, "7a": w, "7b": w,
        "8": -2 * w, "9": 2 * w,
    }


@dataclass(frozen=True)
class AnalyticEigensystem:
    labels: tuple[str, ...]
    energies: np.ndarray
    states: tuple[PureState, ...]
    K1: float
    K2: float
    K3: float

    def state(self, label: str) -> PureState:
        return self.states[self.labels.index(label)]

    def energy(self, label: str) -> float:
        return float(self.energies[self.labels.index(label)])

    def decomposition(self) -> EigenDecomposition:
        """The same eigenpairs as an ascending ``EigenDecomposition``."""
        order = np.argsort(self.energies, kind="stable")
        vecs = np.column_stack([self.states[i].amplitudes for i in order])
        return EigenDecomposition(self.energies[order], vecs)


def _ket(terms: dict[str, float]) -> np.ndarray:
    v = np.zeros(16, dtype=complex)
    for word, amp in terms.items():
        v += amp * basis_ket([int(ch) for ch in word]).amplitudes
    return v


def analytic_eigensystem(p: SpinStarParams) -> AnalyticEigensystem:
    """All sixteen eigenpairs from their closed forms.

    Raises ``AnalyticDomainError`` for ``x < 1e-6`` where the 1/x terms of
    the dark states lose accuracy; callers fall back to ``hermitian_eigen``.
    """
    x = p.x
    if x < X_MIN_ANALYTIC:
        raise AnalyticDomainError(f"x={x} below {X_MIN_ANALYTIC}; use the numerical eigensolver")
    s = np.sqrt(2 + x * x)
    r = np.sqrt(8 + x * x)
    a = 0.5 * (r - x)
    b = 0.5 * (r + x)
    k1 = np.sqrt(4 + 2 * a * a)
    k1_prime = np.sqrt(4 + 2 * b * b)
    k2 = np.sqrt(2 * (2 + x * x))
    k3 = np.sqrt(2 / x**2 + 3 + x * x)
    ix = 1.0 / x

    vectors = {
        # two-excitation sector
        "1+": 0.5 * _ket({"0011": 1, "1100": -1, "0110": -1, "1001": 1}),
        "1-": 0.5 * _ket({"0011": 1, "1100": 1, "0110": -1, "1001": -1}),
        "2+": _ket({"0011": 1, "1100": 1, "0110": 1, "1001": 1, "0101": a, "1010": a}) / k1,
        "2-": _ket({"0011": 1, "1100": -1, "0110": 1, "1001": -1, "0101": a, "1010": -a}) / k1,
        "3+": _ket({"0011": 1, "1100": 1, "0110": 1, "1001": 1, "0101": -b, "1010": -b}) / k1_prime,
        "3-": _ket({"0011": 1, "1100": -1, "0110": 1, "1001": -1, "0101": -b, "1010": b}) / k1_prime,
        # bright states of the one- and three-excitation sectors
        "4+": _ket({"0111": s, "1011": 1, "1101": x, "1110": 1}) / k2,
        "4-": _ket({"0100": 1, "0010": x, "0001": 1, "1000": -s}) / k2,
        "5+": _ket({"0100": 1, "0010": x, "0001": 1, "1000": s}) / k2,
        "5-": _ket({"0111": s, "1011": -1, "1101": -x, "1110": -1}) / k2,
        # dark states
        "6a": _ket({"0001": ix, "0010": 1, "0100": -(ix + x)}) / k3,
        "6b": _ket({"0010": 1, "0001": -x}) / np.sqrt(1 + x * x),
        "7a": _ket({"1011": ix, "1101": 1, "1110": -(ix + x)}) / k3,
        "7b": _ket({"1101": 1, "1011": -x}) / np.sqrt(1 + x * x),
        "8": _ket({"0000": 1}),
        "9": _ket({"1111": 1}),
    }
    energies = analytic_energies(p)
    states = tuple(PureState(vectors[lab]) for lab in LABELS)
    for lab_a, lab_b in (("6a", "6b"), ("7a", "7b")):
        overlap = abs(np.vdot(vectors[lab_a], vectors[lab_b]))
        if overlap > 1e-12:
            raise AnalyticDomainError(f"degenerate pair {lab_a}/{lab_b} not orthogonal ({overlap:.2e})")
    return AnalyticEigensystem(
        LABELS, np.array([energies[lab] for lab in LABELS]), states, float(k1), float(k2), float(k3)
    )


@lru_cache(maxsize=4096)
def eigensystem(p: SpinStarParams) -> EigenDecomposition:
    """Ascending eigensystem of H: closed form when available, Jacobi otherwise."""
    try:
        return analytic_eigensystem(p).decomposition()
    except AnalyticDomainError:
        return hermitian_eigen(hamiltonian(p))


def thermal_state(p: SpinStarParams) -> DensityOperator:
    """Gibbs state exp(-H/kT)/Z built from the spectral decomposition.

    Boltzmann weights are shifted by the ground energy so that kT = 0.01
    against a spectrum spanning tens of omega0 cannot overflow.
    """
    eig = eigensystem(p)
    weights = np.exp(-(eig.values - eig.values[0]) / p.kT)
    rho = (eig.vectors * (weights / weights.sum())) @ eig.vectors.conj().T
    return DensityOperator.trusted(rho)


def peripheral_state(p: SpinStarParams) -> DensityOperator:
    """Thermal state reduced over the central spin, in (spin 1, spin 2, spin 3) order."""
    return partial_trace(thermal_state(p), {1, 2, 3})


def ground_state_label(p: SpinStarParams) -> tuple[str, ...]:
    """Labels of the lowest level; more than one entry means a degenerate ground state."""
    energies = analytic_energies(p)
    lowest = min(energies.values())
    tol = DEGENERACY_TOL * p.omega0
    return tuple(lab for lab in LABELS if energies[lab] - lowest <= tol)


def transition_couplings(omega0: float = 1.0, x: float = 1.0) -> tuple[float, float]:
    """Couplings where the ground state switches 8 -> 4- and 4- -> 2-.

    Solves E_8 = E_4- and E_4- = E_2- in closed form.
    """
    s = np.sqrt(2 + x * x)
    gap = 0.5 * (x + np.sqrt(8 + x * x)) - s
    if gap <= 0:
        raise NoCrossingError(f"levels 4- and 2- do not cross for x={x}")
    return float(omega0 / s), float(omega0 / gap)
