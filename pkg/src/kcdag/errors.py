"""Exception types shared by every kcdag module.

Kept in a module that is never compiled so that the pure and accelerated
engine backends raise identical classes.
"""


class KcdagError(Exception):
    """Base class for all kcdag errors."""


class DimacsError(KcdagError):
    """Malformed DIMACS CNF input."""


class OrderViolationError(KcdagError):
    """A vertex construction would break the variable order invariant."""


class DecompositionError(KcdagError):
    """A conjunction's children are not a valid decomposition."""


class BoundViolationError(KcdagError):
    """An operation produced or received a diagram outside its bound."""


class SerializationError(KcdagError):
    """Malformed diagram file."""


class OracleLimitError(KcdagError):
    """A truth-table oracle was asked to enumerate too many variables."""
