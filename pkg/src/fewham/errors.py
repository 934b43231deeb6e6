"""Exception hierarchy shared by all modules."""


class FewhamError(Exception):
    """Base class for every error raised by the package."""


class GraphError(FewhamError, ValueError):
    """An invalid graph: loop, multiplicity above 2, bad vertex index."""


class FormatError(FewhamError, ValueError):
    """A malformed graph6 or edge-list record."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class PreconditionError(FewhamError, ValueError):
    """Input violates an operation's stated precondition."""


class CapExceeded(FewhamError):
    """Requested size is beyond a configured desk-scale cap."""


class ValidationError(FewhamError):
    """A construction or cross-check failed its own postcondition."""
