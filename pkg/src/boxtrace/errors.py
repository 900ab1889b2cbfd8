"""Exception types shared by the computational modules."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(ArithmeticError):
    """A quadrature or series failed to reach its tolerance.

    ``achieved_error`` holds the best error estimate that was obtained.
    """

    def __init__(self, message, achieved_error=float("nan")):
        super().__init__(message)
        self.achieved_error = achieved_error


class ResourceError(RuntimeError):
    """A truncated sum would need more terms than the configured budget."""

    def __init__(self, message, needed_terms=None):
        super().__init__(message)
        self.needed_terms = needed_terms


class ValidityWarning(UserWarning):
    """A formula is evaluated outside the parameter range it was derived for."""
