"""Exception types raised across the package."""


class RegipError(Exception):
    """Base class for all errors raised by :mod:`regip`."""


class DimensionMismatch(RegipError, ValueError):
    pass


class DomainViolation(RegipError, ValueError):
    """A point outside the open positive orthant was passed where ``x > 0`` is required."""


class EvaluationFailure(RegipError, ArithmeticError):
    """A problem callback or barrier evaluation produced a non-finite value."""


class InconsistentBounds(RegipError, ValueError):
    pass


class NonFiniteEntry(RegipError, ValueError):
    pass


class SingularMatrix(RegipError, ArithmeticError):
    def __init__(self, msg, inertia=None):
        super().__init__(msg)
        self.inertia = inertia


class RefinementFailure(RegipError, ArithmeticError):
    pass


class InertiaCorrectionFailure(RegipError, ArithmeticError):
    pass


class UnknownProblem(RegipError, KeyError):
    pass


class UnknownSolver(RegipError, KeyError):
    pass


class MissingSolver(RegipError, KeyError):
    pass
