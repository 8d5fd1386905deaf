"""Exception hierarchy used across the package."""


class BlochsepError(Exception):
    """Base class for every error raised by blochsep."""


class DimensionError(BlochsepError, ValueError):
    """Shapes or declared subsystem dimensions are inconsistent."""


class DomainError(BlochsepError, ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(BlochsepError, ValueError):
    """A matrix fails a Hermiticity, trace or positivity check."""


class NumericalError(BlochsepError, ArithmeticError):
    """A numerical routine failed or produced inconsistent output."""


class SingularFilterError(NumericalError):
    """A local filter is (numerically) singular."""


class SingularReductionError(NumericalError):
    """A reduced state is singular and cannot be whitened without regularization."""
