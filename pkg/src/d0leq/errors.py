"""Exception hierarchy shared by the library and the command-line front end."""


class D0LError(Exception):
    """Base class for all errors raised by d0leq."""

    exit_code = 4


class InputError(D0LError, ValueError):
    """Malformed input: unknown letter, bad rule, missing field."""

    exit_code = 4

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class UnsupportedInputError(InputError):
    """Input is well formed but outside what an operation handles."""


class PreconditionError(D0LError):
    """A mathematical precondition of the decision procedure fails."""

    exit_code = 2

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = tuple(failures) or (message,)


class ResourceLimitError(D0LError):
    """A configured budget (materialization, overflow cap) was exceeded."""

    exit_code = 3

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
