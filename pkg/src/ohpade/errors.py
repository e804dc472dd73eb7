"""Exception hierarchy shared by the library and the command line tool.

Each exception carries the process exit code the CLI maps it to: 2 for
configuration / parameter problems, 3 for numerical failures.  Exit code 1 is
reserved for verification suites that ran but did not pass.
"""


class OhpadeError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class ConfigError(OhpadeError):
    """Malformed or inconsistent configuration input."""

    exit_code = 2


class ParameterError(OhpadeError):
    """Arguments violate a documented precondition."""

    exit_code = 2


class UnsupportedInputError(OhpadeError):
    """Input is well formed but outside the supported class."""

    exit_code = 2


class DomainError(OhpadeError):
    """Evaluation point lies where the requested quantity is undefined."""

    exit_code = 3


class NumericError(OhpadeError):
    """A numerical process failed to reach its target accuracy."""

    exit_code = 3

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class DegenerateSystemError(OhpadeError):
    """Linear system is identically zero or otherwise unusable."""

    exit_code = 3


class InsufficientDataError(OhpadeError):
    """Too few usable data points for the requested fit."""

    exit_code = 3
