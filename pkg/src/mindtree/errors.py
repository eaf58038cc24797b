"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SizeError(DomainError):
    """A request exceeds the supported enumeration size."""


class VerificationError(AssertionError):
    """A brute-force check disagreed with a formula or claim."""
