"""Exception hierarchy shared by all modules."""


class NLTraceError(Exception):
    """Base class for every error raised by this package."""


class DomainError(NLTraceError, ValueError):
    """An argument lies outside the domain of the operation."""


class SymmetryError(NLTraceError, ValueError):
    """A matrix expected to be Hermitian (or square) is not."""


class ConvergenceError(NLTraceError, ArithmeticError):
    """The Jacobi eigensolver hit its sweep cap.

    Attributes
    ----------
    residual : float
        Off-diagonal Frobenius norm when iteration stopped.
    """

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class ConsistencyError(NLTraceError, ArithmeticError):
    """Two independent evaluations of the same quantity disagree."""


class HypothesisError(NLTraceError, ValueError):
    """A weight does not satisfy the hypothesis an operation requires
    (concavity, continuity)."""


class UndefinedRatioError(NLTraceError, ZeroDivisionError):
    """A ratio has a zero denominator."""


class InputError(NLTraceError, ValueError):
    """Malformed or incomplete input data (JSON payloads, measures)."""
