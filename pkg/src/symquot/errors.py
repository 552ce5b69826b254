"""Shared exception hierarchy.

Every failure that stems from bad mathematical input (as opposed to a bug
or a usage mistake on the command line) raises a subclass of SymquotError,
so callers can catch one type.
"""


class SymquotError(Exception):
    """Base class for all domain errors raised by this package."""


class FieldError(SymquotError):
    """Invalid finite-field construction or arithmetic."""


class GroupError(SymquotError):
    """Invalid permutation or group operation."""


class CatalogError(SymquotError):
    """A named group could not be built or failed its load-time checks."""


class GraphError(SymquotError):
    """Invalid graph construction, format, or query."""


class DesignError(SymquotError):
    """Invalid incidence structure or design transform."""


class ConstructionError(SymquotError):
    """A graph construction's preconditions do not hold."""


class NotSelfPairedError(ConstructionError):
    """The requested orbital is not self-paired, so no undirected orbital
    graph exists for it.  Kept distinct from other precondition failures
    because a caller may want to probe for exactly this situation."""


class ClassificationError(SymquotError):
    """The classifier was handed a triple it cannot place."""
