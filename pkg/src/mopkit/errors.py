"""Exception hierarchy shared by every module.

Domain errors (a mathematically ill-posed request) and numeric errors (the
request is fine but the arithmetic could not deliver) are kept apart so the
command line can map them to different exit codes.
"""


class MOPError(Exception):
    """Base class for all library errors."""


class DomainError(MOPError, ValueError):
    """Mathematically invalid request (bad support point, degenerate input)."""


class NumericError(MOPError, ArithmeticError):
    """Floating-point computation failed to reach the requested accuracy."""


class SingularSystem(DomainError):
    """Elimination found no usable pivot.

    ``exact_zero`` is true when the failing pivot column was identically zero
    (always the case in exact arithmetic), false when a floating pivot merely
    fell below the threshold.
    """

    def __init__(self, message, exact_zero=True):
        super().__init__(message)
        self.exact_zero = exact_zero


class NonNormalIndex(DomainError):
    pass


class NoSolution(DomainError):
    pass


class NonUnique(DomainError):
    pass


class NoFit(DomainError):
    pass


class TableExhausted(DomainError, IndexError):
    pass


class UnsupportedForTable(DomainError):
    pass


class InsufficientTerms(DomainError):
    pass


class BranchAmbiguity(DomainError):
    pass


class NonConvergence(NumericError):
    pass


class IllConditioned(NumericError):
    pass


class NewtonDivergence(NumericError):
    pass
