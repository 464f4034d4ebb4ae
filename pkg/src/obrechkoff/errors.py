"""Exception types shared across the package."""


class ObrechkoffError(Exception):
    """Base class for all package errors."""


class ConfigurationError(ObrechkoffError):
    """Invalid precision, stepper or problem configuration."""


class DomainError(ObrechkoffError):
    """Mathematically invalid input (zero denominator, bad window, ...)."""


class SingularParameterError(ObrechkoffError):
    """Fitted-coefficient evaluation hit a pole of the coefficient functions.

    Carries the offending fitting parameter in ``v``.
    """

    def __init__(self, message, v=None):
        super().__init__(message)
        self.v = v


class OutsidePeriodicityError(ObrechkoffError):
    """|B(v)/A(v)| > 1: the characteristic roots left the unit circle."""


class StepFailureError(ObrechkoffError):
    """Implicit solve failed to converge within the iteration budget."""

    def __init__(self, message, step_index=None, iterations=None):
        super().__init__(message)
        self.step_index = step_index
        self.iterations = iterations


class FitError(ObrechkoffError):
    """Leading-term fit rejected (sign changes, zeros or excessive residual)."""
