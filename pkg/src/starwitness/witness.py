"""Biseparability-exclusion witness for three qubits.

The trial state lives on two copies of the three-qubit register and is a
product of six single-qubit Bloch kets. A ``SlotPattern`` says which of
the two kets, ``A = |theta, phi>`` or ``B = |eta, xi>``, sits in each slot
(copy-1 qubits 1..3, then copy-2 qubits 1..3). With ``u`` and ``v`` the
copy-1 and copy-2 products,

    Q = |<u|rho|v>| - sum_i sqrt(<u_i|rho|u_i> <v_i|rho|v_i>)

where ``u_i`` and ``v_i`` are ``u`` and ``v`` with the qubit-``i`` factors
exchanged between the copies, over the bipartitions 1|23, 2|13, 3|12.
``Q > 0`` certifies genuine tripartite entanglement; ``C = max(0, Q)``.

The grid routines evaluate all quadrature nodes in one vectorized pass and
reduce them with ``numpy.sum`` over a fixed-shape array, so detector values
do not depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError, ContractViolation, NumericalConsistencyError
from .qubits import DensityOperator, basis_ket, bloch_amplitudes, named_state

SQRT_CLIP_TOL = 1e-12
BIPARTITIONS = (0, 1, 2)


@dataclass(frozen=True)
class SlotPattern:
    assignment: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(s).upper() for s in self.assignment)
        if len(labels) != 6 or any(s not in ("A", "B") for s in labels):
            raise ContractViolation(f"slot pattern needs six A/B labels, got {self.assignment}")
        if "A" not in labels or "B" not in labels:
            raise ContractViolation("slot pattern must use both kets")
        object.__setattr__(self, "assignment", labels)

    @classmethod
    def parse(cls, text: str) -> "SlotPattern":
        return cls(tuple(ch for ch in text if ch.strip(", ")))

    def __str__(self):
        return "".join(self.assignment)


PRODUCT_PATTERN = SlotPattern(("A", "A", "A", "B", "B", "B"))
ALTERNATE_PATTERN = SlotPattern(("A", "A", "B", "B", "B", "A"))


@dataclass(frozen=True)
class TrialConfiguration:
    theta: float
    phi: float
    eta: float
    xi: float
    pattern: SlotPattern = PRODUCT_PATTERN

    def __post_init__(self):
        for name in ("theta", "eta"):
            if not (0.0 <= getattr(self, name) <= np.pi):
                raise ContractViolation(f"{name}={getattr(self, name)} outside [0, pi]")
        for name in ("phi", "xi"):
            if not (0.0 <= getattr(self, name) < 2 * np.pi):
                raise ContractViolation(f"{name}={getattr(self, name)} outside [0, 2pi)")


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid over (theta, eta) in [0, pi]^2 plus ``n_longitudes`` azimuths per copy."""

    n_longitudes: int = 1
    n_theta: int = 15
    n_eta: int = 15
    rule: str = "midpoint"

    def __post_init__(self):
        if self.rule not in ("midpoint", "trapezoid"):
            raise ConfigurationError(f"rule must be 'midpoint' or 'trapezoid', got {self.rule!r}")
        if self.n_longitudes < 1:
            raise ConfigurationError(f"n_longitudes must be positive, got {self.n_longitudes}")
        least = 2 if self.rule == "trapezoid" else 1
        for name in ("n_theta", "n_eta"):
            if getattr(self, name) < least:
                raise ConfigurationError(f"{name} must be >= {least} for the {self.rule} rule")

    @classmethod
    def replication(cls, n_longitudes: int) -> "QuadratureSpec":
        """15x15 composite midpoint, the resolution the reference values were quoted at."""
        return cls(n_longitudes, 15, 15, "midpoint")

    def longitudes(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_longitudes) / self.n_longitudes


def quadrature_nodes(n: int, rule: str) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a composite rule on [0, pi]."""
    if rule == "midpoint":
        h = np.pi / n
        return (np.arange(n) + 0.5) * h, np.full(n, h)
    if rule == "trapezoid":
        h = np.pi / (n - 1)
        w = np.full(n, h)
        w[0] = w[-1] = h / 2
        return np.linspace(0.0, np.pi, n), w
    raise ConfigurationError(f"unknown quadrature rule {rule!r}")


def _as_rho(rho) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    if m.shape != (8, 8):
        raise ContractViolation(f"witness needs a three-qubit density operator, got shape {m.shape}")
    return m


def _product(k1, k2, k3) -> np.ndarray:
    return np.einsum("...i,...j,...k->...ijk", k1, k2, k3).reshape(*k1.shape[:-1], 8)


def _q_from_kets(m: np.ndarray, ket_a: np.ndarray, ket_b: np.ndarray, pattern: SlotPattern) -> np.ndarray:
    slots = [ket_a if s == "A" else ket_b for s in pattern.assignment]
    u_f, v_f = slots[:3], slots[3:]
    u = _product(*u_f)
    v = _product(*v_f)
    q = np.abs(np.einsum("...i,ij,...j->...", u.conj(), m, v))
    for i in BIPARTITIONS:
        ui, vi = list(u_f), list(v_f)
        ui[i], vi[i] = v_f[i], u_f[i]
        ui, vi = _product(*ui), _product(*vi)
        du = np.einsum("...i,ij,...j->...", ui.conj(), m, ui).real
        dv = np.einsum("...i,ij,...j->...", vi.conj(), m, vi).real
        prod = du * dv
        if np.any(prod < -SQRT_CLIP_TOL):
            raise NumericalConsistencyError(
                f"negative square-root argument {prod.min():.3e}; is rho positive semidefinite?"
            )
        q = q - np.sqrt(np.clip(prod, 0.0, None))
    return q


def q_grid(rho, theta, phi, eta, xi, pattern: SlotPattern = PRODUCT_PATTERN) -> np.ndarray:
    """Vectorized Q; the four angle arguments broadcast against each other."""
    m = _as_rho(rho)
    theta, phi, eta, xi = np.broadcast_arrays(*(np.asarray(t, dtype=float) for t in (theta, phi, eta, xi)))
    return _q_from_kets(m, bloch_amplitudes(theta, phi), bloch_amplitudes(eta, xi), pattern)


def q_value(rho, trial: TrialConfiguration) -> float:
    """Q at a single trial configuration, contracted one slot at a time."""
    m = _as_rho(rho).reshape(2, 2, 2, 2, 2, 2)
    ka = bloch_amplitudes(trial.theta, trial.phi)
    kb = bloch_amplitudes(trial.eta, trial.xi)
    slots = [ka if s == "A" else kb for s in trial.pattern.assignment]
    u, v = slots[:3], slots[3:]

    def element(bra, ket):
        return np.einsum("a,b,c,abcdef,d,e,f->", bra[0].conj(), bra[1].conj(), bra[2].conj(), m, *ket)

    q = abs(element(u, v))
    for i in BIPARTITIONS:
        ui, vi = list(u), list(v)
        ui[i], vi[i] = v[i], u[i]
        prod = (element(ui, ui) * element(vi, vi)).real
        if prod < -SQRT_CLIP_TOL:
            raise NumericalConsistencyError(
                f"negative square-root argument {prod:.3e} for bipartition {i + 1}|rest"
            )
        q -= np.sqrt(max(prod, 0.0))
    return float(q)


def c_value(rho, trial: TrialConfiguration) -> float:
    return max(0.0, q_value(rho, trial))


def c_surface(rho, pattern: SlotPattern = PRODUCT_PATTERN, thetas=None, etas=None,
              phi: float = 0.0, xi: float = 0.0) -> np.ndarray:
    """Tabulate C on a (theta, eta) grid at fixed azimuths; rows follow ``thetas``."""
    thetas = np.linspace(0, np.pi, 50) if thetas is None else np.asarray(thetas, dtype=float)
    etas = np.linspace(0, np.pi, 50) if etas is None else np.asarray(etas, dtype=float)
    q = q_grid(rho, thetas[:, None], phi, etas[None, :], xi, pattern)
    return np.maximum(q, 0.0)


def i_n_detector(rho, quad: QuadratureSpec = QuadratureSpec(), pattern: SlotPattern = PRODUCT_PATTERN) -> float:
    """Quadrature of C over (theta, eta), summed over the N x N longitude pairs."""
    m = _as_rho(rho)
    t, wt = quadrature_nodes(quad.n_theta, quad.rule)
    e, we = quadrature_nodes(quad.n_eta, quad.rule)
    lon = quad.longitudes()
    # axes: (phi_j, xi_k, theta, eta)
    q = q_grid(m, t[None, None, :, None], lon[:, None, None, None],
               e[None, None, None, :], lon[None, :, None, None], pattern)
    weighted = np.maximum(q, 0.0) * (wt[:, None] * we[None, :])
    return float(np.sum(weighted))


@lru_cache(maxsize=None)
def ghz_normalizer(quad: QuadratureSpec, pattern: SlotPattern = PRODUCT_PATTERN) -> float:
    """I^(N) of the GHZ state, cached per quadrature spec and pattern."""
    return i_n_detector(named_state("GHZ").projector(), quad, pattern)


def i_n_normalized(rho, quad: QuadratureSpec = QuadratureSpec(), pattern: SlotPattern = PRODUCT_PATTERN) -> float:
    norm = ghz_normalizer(quad, pattern)
    if norm <= 0.0:
        raise ConfigurationError(f"GHZ normalizer vanishes for {quad} with pattern {pattern}")
    return i_n_detector(rho, quad, pattern) / norm


def analytic_c_ghz(theta, eta):
    """Closed-form C(rho_GHZ, theta, 0, eta, 0) with the product pattern.

    Positive part of the coherence term minus the three identical
    population terms.
    """
    theta = np.asarray(theta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    ct, st, ce, se = np.cos(theta), np.sin(theta), np.cos(eta), np.sin(eta)
    coherence = (np.abs(3 * ce + np.cos(3 * eta) + 4 * se**3)
                 * np.abs(3 * ct + np.cos(3 * theta) + 4 * st**3) / 32)
    populations = 1.5 * np.abs(ce**2 * ct + se**2 * st) * np.abs(ct**2 * ce + st**2 * se)
    return np.maximum(0.0, coherence - populations)


def analytic_c_w(theta, eta, convention: str = "swapped"):
    """Closed-form C(theta, 0, eta, 0) for the W family with the product pattern.

    ``as_printed`` is the one-excitation-per-missing-qubit form, which is
    the C-function of ``Wtilde``; ``swapped`` exchanges sin and cos
    everywhere and gives the C-function of ``W``.
    """
    theta = np.asarray(theta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    ct, st, ce, se = np.cos(theta), np.sin(theta), np.cos(eta), np.sin(eta)
    if convention == "swapped":
        ct, st, ce, se = st, ct, se, ce
    elif convention != "as_printed":
        raise ContractViolation(f"convention must be 'as_printed' or 'swapped', got {convention!r}")
    coherence = 3 * np.abs(ct * ce) * st**2 * se**2
    populations = (np.abs(st * se * (2 * ct * se + st * ce))
                   * np.abs(2 * ce * st + se * ct))
    return np.maximum(0.0, coherence - populations)


def mixture_family(family: str, p: float) -> DensityOperator:
    """The three one-parameter families ``p*first + (1-p)*second``.

    ``GHZ_W``: p|GHZ><GHZ| + (1-p)|W><W|; ``W_111`` and ``GHZ_111`` mix the
    entangled state with weight 1-p against |111> with weight p.
    """
    pairs = {
        "GHZ_W": (named_state("GHZ"), named_state("W")),
        "W_111": (basis_ket((1, 1, 1)), named_state("W")),
        "GHZ_111": (basis_ket((1, 1, 1)), named_state("GHZ")),
    }
    if family not in pairs:
        raise ContractViolation(f"unknown mixture family {family!r}; choose from {sorted(pairs)}")
    first, second = pairs[family]
    if not 0.0 <= p <= 1.0:
        raise ContractViolation(f"mixing weight p={p} outside [0, 1]")
    m = p * first.projector().matrix + (1 - p) * second.projector().matrix
    return DensityOperator.trusted(m)
