"""Exception hierarchy shared across the engine.

The CLI maps these to exit codes: ExpressionError -> 1,
PreconditionError (and subclasses) -> 2, VerificationError -> 3.
"""


class EngineError(Exception):
    pass


class ExpressionError(EngineError):
    """Malformed polynomial expression or descriptor JSON."""


class PreconditionError(EngineError):
    """An operation was called outside its contract."""


class PresentationMismatch(PreconditionError):
    """Operands live over different ring presentations."""


class SymmetryError(PreconditionError):
    """Input expected to be symmetric in the roots is not."""

    def __init__(self, message, transposition=None):
        super().__init__(message)
        self.transposition = transposition


class VerificationError(EngineError):
    """A verification sweep found a mismatch."""
