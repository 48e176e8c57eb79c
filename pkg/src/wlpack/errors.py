"""Exception types shared across the package."""


class WLPackError(Exception):
    """Base class for all errors raised by wlpack."""


class InvalidParameterError(WLPackError, ValueError):
    pass


class ParseError(WLPackError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(WLPackError, RuntimeError):
    """A configured cap (tuples, nodes, pattern size) would be exceeded.

    ``bounds`` carries whatever partial information was known when the
    limit was hit, e.g. ``{"lower": 3, "upper": 5}`` from branch-and-bound.
    """

    def __init__(self, message: str, bounds: dict | None = None):
        self.bounds = bounds or {}
        super().__init__(message)


class PreconditionError(WLPackError, ValueError):
    pass
