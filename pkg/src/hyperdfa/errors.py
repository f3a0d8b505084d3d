"""Exception hierarchy shared by every module."""


class DfaError(ValueError):
    """Base class for all errors raised by this package."""


class DfaFormatError(DfaError):
    """Malformed DFA, graph or colouring text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DeterminismError(DfaFormatError):
    """Two transitions for the same (state, symbol) pair."""


class UnknownReferenceError(DfaError):
    """A state or symbol name that does not exist."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(DfaError):
    """The input violates an operation's precondition."""


class NotMinimalError(PreconditionError):
    """The operation needs a DFA without distinct equivalent states."""


class InfiniteDifferenceError(DfaError):
    """The symmetric difference of two languages is infinite."""


class BudgetExceededError(DfaError):
    """A brute-force oracle would enumerate more words than allowed."""


class ColoringError(DfaError):
    """A colouring is not proper (or does not cover the graph)."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class ConstraintError(DfaError):
    """Generator parameters violate the construction's bounds."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
