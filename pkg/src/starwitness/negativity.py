"""Partial-transpose negativities of three-qubit states.

Normalization: ``N = ||rho^{T_A}||_1 - 1``, i.e. twice the summed modulus of
the negative partial-transpose eigenvalues, so that GHZ scores 1 on every
bipartition. The tripartite negativity is the geometric mean of the three
one-versus-rest values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .linalg import hermitian_eigen
from .qubits import DensityOperator, partial_transpose

NEGATIVE_EIG_TOL = 1e-12


@dataclass(frozen=True)
class BipartitionLabel:
    """Bipartition ``solo | rest``; ``solo`` counts peripheral qubits from 1."""

    solo: int

    def __post_init__(self):
        if self.solo not in (1, 2, 3):
            raise ContractViolation(f"solo qubit must be 1, 2 or 3, got {self.solo}")


def _check(rho: DensityOperator) -> None:
    if rho.num_qubits != 3:
        raise ContractViolation(f"negativity is defined here for 3 qubits, got {rho.num_qubits}")


def bipartite_negativity(rho: DensityOperator, part: BipartitionLabel | int) -> float:
    _check(rho)
    if not isinstance(part, BipartitionLabel):
        part = BipartitionLabel(int(part))
    values = hermitian_eigen(partial_transpose(rho, {part.solo - 1})).values
    negative = values[values < -NEGATIVE_EIG_TOL]
    return float(2.0 * np.sum(np.abs(negative)))


def tripartite_negativity(rho: DensityOperator) -> float:
    _check(rho)
    factors = [bipartite_negativity(rho, BipartitionLabel(k)) for k in (1, 2, 3)]
    if min(factors) <= 0.0:
        return 0.0
    return float(np.prod(factors) ** (1.0 / 3.0))
