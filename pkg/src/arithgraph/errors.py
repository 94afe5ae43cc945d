"""Exception hierarchy shared by every module."""


class ArithGraphError(Exception):
    """Base class for library errors."""

    kind = "error"


class InvalidParameterError(ArithGraphError, ValueError):
    kind = "invalid-parameter"


class ShapeError(ArithGraphError, ValueError):
    kind = "shape"


class InvalidInputError(ArithGraphError, ValueError):
    kind = "invalid-input"


class PreconditionError(ArithGraphError, ValueError):
    kind = "precondition"


class SizeLimitError(ArithGraphError):
    kind = "size-limit"


class MissingDataError(ArithGraphError):
    kind = "missing-data"


class MissingFixtureError(ArithGraphError, KeyError):
    kind = "missing-fixture"


class CorruptFixtureError(ArithGraphError):
    kind = "corrupt-fixture"


class InvariantViolation(ArithGraphError, AssertionError):
    kind = "invariant-violation"


class PartialEnumerationError(ArithGraphError):
    """Search limits ran out; ``partial`` holds what was found so far."""

    kind = "partial-result"

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial
