"""Exception hierarchy shared by every module."""


class BSError(Exception):
    """Base class for all library errors."""


class ParseError(BSError, ValueError):
    """Malformed literal or word; ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        self.detail = message
        if position is not None and text is not None:
            message = f"parse error at position {position} in {text!r}: {message}"
        elif position is not None:
            message = f"parse error at position {position}: {message}"
        else:
            message = f"parse error: {message}"
        super().__init__(message)


class DomainError(BSError, ValueError):
    """A mathematically invalid request (exit code 3 on the command line)."""


class PreconditionError(DomainError):
    pass


class BaseMismatch(DomainError):
    pass


class NotInZn(DomainError):
    """A rational whose denominator is not n-smooth."""


class NotAUnit(DomainError):
    pass


class NotCoprime(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class NoMaximalRoot(DomainError):
    pass


class IdentityStabilizer(DomainError):
    pass


class UseKernelDescriptor(DomainError):
    """The requested set is infinite in every degree; use the kernel descriptor."""
