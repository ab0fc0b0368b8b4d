"""Exception types raised across the package."""


class RSLError(Exception):
    """Base class for package errors."""


class EmptyInput(RSLError, ValueError):
    pass


class NonConvergence(RSLError):
    """Optimizer failed its tolerances; ``best`` holds the best-effort result."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class InsufficientTail(RSLError, ValueError):
    pass


class UndefinedVMR(RSLError, ValueError):
    pass


class OutputTooLarge(RSLError):
    pass


class ParseError(RSLError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ModeViolation(ParseError):
    pass
