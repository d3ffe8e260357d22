"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter or argument lies outside the documented domain."""


class UnsupportedRegimeError(DomainError):
    """The request is well-formed but falls in a regime the method cannot serve.

    Example: density inversion of a characteristic function that is not
    absolutely integrable.
    """


class AccuracyError(RuntimeError):
    """The requested tolerance cannot be met within the configured budget."""
