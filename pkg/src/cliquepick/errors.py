"""Exception hierarchy shared by all modules."""


class CliquePickError(Exception):
    """Base class for every domain error raised by the package."""


class ParseError(CliquePickError, ValueError):
    """Malformed graph file. ``line`` is 1-based, or None for whole-file errors."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StructuralError(CliquePickError, ValueError):
    """Input graph lacks a required structural property (chordal, connected, ...)."""


class PreconditionError(CliquePickError, ValueError):
    """An operation was called with arguments violating its contract."""


class ResourceError(CliquePickError, RuntimeError):
    """Exact computation refused because it would exceed a configured cap."""


class NotExtendableError(CliquePickError, ValueError):
    """A partially directed graph admits no consistent extension."""
