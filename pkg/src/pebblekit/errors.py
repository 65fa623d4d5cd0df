"""Exception hierarchy.

Validation errors (bad input, violated preconditions) and resource-cap
errors (search would exceed a configured budget) are kept apart so callers
can map them to distinct exit codes: a cap error is never a wrong answer,
but it is not an answer either.
"""


class PebbleKitError(Exception):
    """Base class for all library errors."""


class ValidationError(PebbleKitError):
    """Malformed input or violated precondition."""


class GraphParseError(ValidationError):
    """Text could not be parsed as a graph; message names the line/field."""


class ResourceCapError(PebbleKitError):
    """A search was aborted because it would exceed a configured cap."""


class StateCapExceeded(ResourceCapError):
    """The pebble-game state search would visit more states than allowed."""


class WindowCapExceeded(ResourceCapError):
    """A truncation window would contain more vertices than allowed."""


class NoLinkageError(PebbleKitError):
    """No linkage exists inside the given finite window.

    This is always depth-qualified: failure at one truncation depth says
    nothing about deeper windows or the infinite host graph.
    """

    def __init__(self, message: str, depth: int):
        super().__init__(message)
        self.depth = depth


class LinkageCheckError(PebbleKitError):
    """A claimed linkage failed independent verification."""
