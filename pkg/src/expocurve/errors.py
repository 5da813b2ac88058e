"""Exception types shared across the package."""


class ExpocurveError(Exception):
    """Base class for all package errors."""


class InvalidCurveError(ExpocurveError):
    """A function does not satisfy the exposure-curve requirements."""


class DomainError(ExpocurveError, ValueError):
    """A parameter lies outside its admissible domain."""


class DegenerateDistributionError(ExpocurveError):
    """The distribution puts (almost) all mass on the censoring point."""


class AccuracyError(ExpocurveError):
    """Numerical routine could not reach the requested tolerance.

    Carries the best available estimate in ``estimate``.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class DataError(ExpocurveError, ValueError):
    """Input data violates the expected schema or value range."""


class FitFailureError(ExpocurveError):
    """Maximum-likelihood fit could not produce a usable result."""


class UnsupportedOperationError(ExpocurveError):
    """Operation needs information (e.g. a third derivative) that is missing."""
