"""Genuine tripartite entanglement detection for thermal spin-star networks."""

from .errors import (
    AnalyticDomainError,
    ConfigurationError,
    ContractViolation,
    ConvergenceError,
    NoCrossingError,
    NumericalConsistencyError,
    StarWitnessError,
)
from .negativity import bipartite_negativity, tripartite_negativity
from .qubits import DensityOperator, PureState, named_state
from .spinstar import SpinStarParams, peripheral_state, thermal_state
from .witness import QuadratureSpec, SlotPattern, TrialConfiguration, c_value, i_n_detector, q_value

__version__ = "0.1.0"
