"""Exception hierarchy.

Domain errors (bad input, targets outside the image, ...) derive from
:class:`DomainError`; the CLI maps them to exit code 1.
"""


class UtpolyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(UtpolyError, ValueError):
    pass


class PolySyntaxError(DomainError):
    """Malformed polynomial text."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class NotMultilinear(DomainError):
    pass


class EmptyPolynomial(DomainError):
    """Input cancelled to zero but was not the literal ``0``."""


class ZeroPolynomial(DomainError):
    """Degree analysis requested for the zero polynomial."""


class ArityMismatch(DomainError):
    pass


class SizeMismatch(DomainError):
    pass


class IndexOutOfRange(DomainError, IndexError):
    pass


class InvalidProfile(DomainError):
    pass


class InvalidWitness(DomainError):
    pass


class TargetOutsideImage(DomainError):
    pass


class CostLimit(DomainError):
    """Brute-force enumeration would exceed the configured budget."""


class RetriesExhausted(UtpolyError):
    pass


class InternalVerificationFailure(UtpolyError, AssertionError):
    """A computed certificate failed exact re-verification. Always a bug."""
