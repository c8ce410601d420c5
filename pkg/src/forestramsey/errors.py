class InvalidInput(ValueError):
    pass


class ParseError(ValueError):
    """Malformed forest text; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownValue(LookupError):
    """A classical Ramsey value or witness the table does not hold."""


class CapacityError(RuntimeError):
    pass


class SearchIndeterminate(RuntimeError):
    """The search ran out of node or time budget before deciding."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats
