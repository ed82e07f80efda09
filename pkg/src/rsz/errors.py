"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class RszError(Exception):
    exit_code = 1


class InputError(RszError):
    """Malformed input file or payload."""

    exit_code = 1

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(RszError):
    """The operation is not defined for this input (disconnected, non-admissible, ...)."""

    exit_code = 2


class WindowError(RszError):
    """A finite window of an infinite quiver is too small for the request."""

    exit_code = 3

    def __init__(self, message, needed=None):
        if needed is not None:
            message = f"{message} (needed window {needed[0]}:{needed[1]})"
        super().__init__(message)
        self.needed = needed


class InvariantError(RszError):
    """An internal consistency check failed. Always a bug."""

    exit_code = 4
