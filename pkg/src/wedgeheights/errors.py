"""Exception hierarchy shared by every module."""


class WedgeHeightsError(Exception):
    pass


class DimensionError(WedgeHeightsError, ValueError):
    pass


class DomainError(WedgeHeightsError, ValueError):
    pass


class PreconditionError(WedgeHeightsError, ValueError):
    pass


class ParseError(WedgeHeightsError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BudgetExceeded(WedgeHeightsError, RuntimeError):
    pass


class InvariantViolation(WedgeHeightsError, AssertionError):
    """A proven identity or inequality failed: always a bug, never bad input."""
