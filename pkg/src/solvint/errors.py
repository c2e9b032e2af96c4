"""Exception types shared across the toolkit."""


class SolvintError(Exception):
    """Base class for all toolkit errors."""


class MalformedInput(SolvintError):
    """Inputs violate a structural precondition (mixed moduli, bad shapes...)."""


class ResourceCapExceeded(SolvintError):
    """A configured size cap was exceeded; message names the cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(f"{message} (cap: {cap})")
        self.cap = cap


class CaseDispatchError(SolvintError):
    """Intersection case preconditions not met; caller must use the other case."""


class UnsupportedGroup(SolvintError):
    """The operation requires a solvable group (or similar) and the input is not."""


class RealizationError(SolvintError):
    """No family of maximal supplements realizes the requested pair."""


class ValidationError(SolvintError):
    """A named group invariant failed during construction."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class SchemaError(SolvintError):
    """A group-spec document does not match the expected schema."""
