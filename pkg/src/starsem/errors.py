"""Exception types shared across the package."""


class StarsemError(Exception):
    """Base class for errors raised by this package."""


class ParseError(StarsemError, ValueError):
    """Malformed textual input (regex, formula, or one of the file formats).

    `position` is a 0-based offset into the input when known, else None.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class WordError(StarsemError, ValueError):
    """A word contains a letter outside the alphabet."""


class ResourceLimitError(StarsemError, RuntimeError):
    """A construction exceeded its state/element budget.

    Carries how far the construction got so callers can report it.
    """

    def __init__(self, message, budget=None, reached=None):
        super().__init__(message)
        self.budget = budget
        self.reached = reached
