"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class UnsupportedError(NotImplementedError):
    """The requested construction is not available for these arguments."""
