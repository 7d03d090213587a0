"""Exception types shared across the package.

Every error a caller can provoke maps to one of these; anything else
escaping the public API is a bug (the CLI reports it as such).
"""


class FusioncellError(Exception):
    """Base class for all package errors."""


class InvalidSpec(FusioncellError):
    """A group/fusion specification failed validation or did not parse."""


class InvalidInput(FusioncellError):
    """An operation was called with arguments violating its precondition."""


class SubgroupMismatch(InvalidInput):
    """A Subgroup or GroupHom belongs to a different parent group."""


class OrderCapExceeded(FusioncellError):
    """A construction or enumeration would exceed the configured size cap."""

    def __init__(self, message: str, needed: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.cap = cap


class ExternalDataRequired(FusioncellError):
    """The fusion system carries only declared facts; the requested
    morphism data lives in an external source and was not supplied."""


class RelationCheckFailed(FusioncellError):
    """A constructor postcondition failed.  Always a bug, never user input."""


class InternalInvariantError(FusioncellError):
    """A cross-checked internal invariant failed.  Always a bug."""
