class DiagChaseError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DiagChaseError, ValueError):
    """Malformed input: wrong handle type, endpoint mismatch, bad shape."""


class NotAHomomorphism(InputError):
    """A matrix does not define a well-defined group homomorphism."""

    def __init__(self, message: str, entry: tuple[int, int] | None = None):
        super().__init__(message)
        self.entry = entry


class PreconditionError(DiagChaseError, ValueError):
    """An operation's mathematical precondition does not hold."""


class ConsistencyError(DiagChaseError, AssertionError):
    """Two independent routes to the same answer disagreed.

    Seeing this means there is a bug in a category instance.
    """


class OracleInapplicable(DiagChaseError):
    """The element oracle was handed an infinite or too-large group."""


class GenerationError(DiagChaseError):
    """A generator could not produce a morphism with the requested property."""
