"""Exception hierarchy shared by the library and the command line front end."""


class StarWitnessError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ContractViolation(StarWitnessError, ValueError):
    """An operation was called with arguments outside its precondition."""

    exit_code = 2


class ConfigurationError(StarWitnessError, ValueError):
    """A sweep or quadrature configuration is invalid."""

    exit_code = 2


class NumericalError(StarWitnessError, ArithmeticError):
    exit_code = 3


class ConvergenceError(NumericalError):
    """The Jacobi eigensolver hit its sweep cap.

    The off-diagonal Frobenius norm at the point of failure is kept in
    ``residual``.
    """

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class NumericalConsistencyError(NumericalError):
    """A quantity that must be nonnegative came out clearly negative."""


class AnalyticDomainError(StarWitnessError):
    """The closed-form eigensystem is not usable for these parameters.

    Callers are expected to fall back to the numerical eigensolver.
    """


class NoCrossingError(StarWitnessError):
    """Two energy levels never cross for the requested parameters."""


class OutputError(StarWitnessError, OSError):
    exit_code = 4
