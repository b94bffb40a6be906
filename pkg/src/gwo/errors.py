"""Exception hierarchy.

Structural problems (malformed tables, wrong shapes) are kept apart from
algebraic precondition failures so the CLI can map them to distinct exit
codes.
"""


class GwoError(Exception):
    """Base class for all library errors."""


class StructureError(GwoError, ValueError):
    """Malformed input: wrong table shape, out-of-range index, bad file."""

    def __init__(self, message, *, line=None, column=None, index=None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.index = index


class SignatureMismatchError(StructureError):
    """Two structures that must share an operation signature do not."""


class PreconditionError(GwoError, ValueError):
    """An operation was called on inputs that violate its precondition."""


class NotIdealError(PreconditionError):
    pass


class NotNormalError(PreconditionError):
    pass


class NotSplitError(PreconditionError):
    pass


class NotCoveringError(PreconditionError):
    pass


class IllDefinedError(PreconditionError):
    """An induced operation on classes depends on the chosen representatives."""

    def __init__(self, message, conflict=None):
        super().__init__(message)
        self.conflict = conflict


class BoundExceededError(PreconditionError):
    """Exhaustive search refused because the structure is larger than the bound."""


class InconsistencyError(GwoError, AssertionError):
    """Two independent computations of the same fact disagree.

    Never expected on valid inputs; raised instead of silently picking one.
    """
