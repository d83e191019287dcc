"""Exception types shared across the package."""


class PopmatchError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PopmatchError):
    """Malformed instance or matching file; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class RuleModeMismatchError(PopmatchError):
    """A threshold-based rule or notion was applied to a weak-mode instance."""


class TooLargeError(PopmatchError):
    """An exhaustive scan would exceed the edge-count guard."""


class InvalidAssignmentError(PopmatchError):
    """An edge-copy assignment is not a matching of the duplicated instance."""


class PreconditionViolatedError(PopmatchError):
    """A gadget input does not satisfy the construction's requirements."""
