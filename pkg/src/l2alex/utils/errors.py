"""
Exception hierarchy shared by the services and the command-line surface.
"""


class L2AlexError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ParseError(L2AlexError):
    """Malformed word, polynomial, PD code or JSON input."""

    exit_code = 2


class PresentationError(L2AlexError):
    """A presentation, homomorphism or PD code violates its invariants."""

    exit_code = 2


class SingularSelectionError(L2AlexError):
    """No admissible row/column selection makes the required minor nonsingular."""

    exit_code = 3

    def __init__(self, message: str, selection: str = "L"):
        super().__init__(message)
        self.selection = selection


class ZeroPolynomialError(L2AlexError, ValueError):
    """An operation needs a nonzero polynomial (its degree would be -infinity)."""


class ExponentOverflowError(L2AlexError, OverflowError):
    """A Laurent exponent left the supported range."""
