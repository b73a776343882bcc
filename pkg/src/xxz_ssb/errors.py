"""Exception hierarchy shared by every module in the package."""


class XXZError(Exception):
    """Base class for all package errors."""


class DomainError(XXZError, ValueError):
    """An input parameter lies outside the supported domain."""


class NumericalFailure(XXZError, ArithmeticError):
    """Base class for failures of a numerical routine (CLI exit code 2)."""


class QuadratureError(NumericalFailure):
    pass


class DerivativeError(NumericalFailure):
    pass


class NumericalError(NumericalFailure):
    pass


class ConvergenceError(NumericalFailure):
    pass


class FitError(NumericalFailure):
    pass


class PhysicalityError(XXZError, ValueError):
    """A density matrix has an eigenvalue below the positivity tolerance."""


class UnsupportedSeparation(DomainError):
    pass


class ResourceError(DomainError):
    pass


class DegeneracyError(XXZError, ValueError):
    pass


class MissingSeries(XXZError, KeyError):
    pass
