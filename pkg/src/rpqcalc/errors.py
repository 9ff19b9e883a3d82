"""Exception hierarchy shared by every module."""


class RpqError(Exception):
    """Base class for all workbench errors."""


class ParameterDomainError(RpqError, ValueError):
    """A parameter lies outside the range the construction requires."""


class ConfigurationError(RpqError, ValueError):
    """An algebra or operator configuration is incomplete or inconsistent."""


class EvaluationError(RpqError, ArithmeticError):
    """Exact evaluation hit a pole or an undefined value."""


class PoleError(EvaluationError):
    pass


class DivergenceError(ParameterDomainError):
    """An infinite product or series does not converge for these parameters."""


class ShapeError(RpqError, ValueError):
    """Operands have incompatible arity."""


class SizeError(RpqError, ValueError):
    """A request exceeds the cost guard of an operation."""
