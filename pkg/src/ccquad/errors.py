"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of a mathematical function."""


class UsageError(ValueError):
    """Invalid call: bad length, out-of-range index, unknown name."""


class NumericalFailure(ArithmeticError):
    """A numerical procedure broke down (e.g. a zero pivot)."""


class AccuracyFailure(NumericalFailure):
    """Requested accuracy was not reached.

    Carries the best available estimate and an error bound for it.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class UnstableRecurrenceWarning(UserWarning):
    """Forward recursion forced on parameters where it is known to be unstable."""
