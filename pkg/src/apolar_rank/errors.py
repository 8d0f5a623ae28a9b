"""Exception hierarchy.

``ApolarError`` subclasses signal bad input or unmet preconditions (CLI exit
code 1).  ``InconsistencyError`` signals a violated mathematical invariant,
i.e. a bug (exit code 2).
"""


class ApolarError(ValueError):
    pass


class ParseError(ApolarError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DegreeError(ApolarError):
    pass


class PreconditionError(ApolarError):
    pass


class InconsistencyError(RuntimeError):
    pass


class NotConnectedError(PreconditionError):
    """A monomial set that must be connected to 1 is not."""


class ContainmentError(PreconditionError):
    """Monomial sets violate a required inclusion."""


class FlatExtensionError(PreconditionError):
    """Singular principal block or non-commuting multiplication matrices."""


class RecoveryError(ApolarError):
    """Numeric recovery failed within its retry budget."""
