"""Exception hierarchy shared by all reeb-forge modules."""


class ReebForgeError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ReebForgeError, ValueError):
    """Invalid input data or a violated structural constraint."""


class UnsupportedRingError(ValidationError):
    """Operation requires integer coefficients but got a field."""


class ChainComplexError(ValidationError):
    """Boundary matrices do not form a chain complex."""


class ScriptError(ValidationError):
    """An operation inside a bubbling script is invalid.

    Carries the zero-based index of the offending operation.
    """

    def __init__(self, index: int, message: str):
        super().__init__(f"op {index}: {message}")
        self.index = index


class InfeasibleTargetError(ReebForgeError):
    """A planning target violates a necessary precondition.

    The message cites the violated inequality or range so callers can
    report *why* the target is out of reach rather than just failing.
    """
