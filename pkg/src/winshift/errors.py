"""Exception types shared across the library."""


class WinshiftError(Exception):
    """Base class for all errors raised by this package."""


class ConstructionError(WinshiftError):
    """A substitution definition is malformed."""


class PreconditionError(WinshiftError, ValueError):
    """An argument violates a documented precondition."""


class NotInLanguageError(WinshiftError):
    """A word is not a factor of the subshift under study."""


class UnsupportedInputError(WinshiftError):
    """The operation needs a property the input lacks (markedness, primitivity, ...)."""


class PeriodicInputError(UnsupportedInputError):
    """The parameters generate an ultimately periodic word."""


class CapExceededError(WinshiftError):
    """An iterative search hit its cap before finding an answer."""


class InternalConsistencyError(WinshiftError):
    """A computed result contradicts an invariant that must hold; indicates a bug."""
