"""Exception hierarchy shared by the library and the command line.

The command line maps ``FgError`` subclasses onto exit codes: validation and
syntax problems exit with 2, size guards exit with 3.
"""


class FgError(Exception):
    """Base class for every error raised on purpose by this package."""

    exit_code = 2


class ValidationError(FgError):
    """Input is malformed or violates a documented precondition."""


class DslSyntaxError(ValidationError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)


class NotAVertexError(ValidationError):
    """A tuple was used as a vertex of a formula that does not contain it."""


class SizeCapError(FgError):
    """A configurable size guard fired (materialization, components, BFS, ...)."""

    exit_code = 3


class ConventionError(ValidationError):
    """A Turing machine run violated the halting convention."""


class StepBudgetError(SizeCapError):
    """Simulation did not halt within the allowed number of steps."""
