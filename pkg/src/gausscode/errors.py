"""Exception types shared across the package."""


class GaussCodeError(ValueError):
    """Base class for invalid input."""


class BadToken(GaussCodeError):
    pass


class OccurrenceCount(GaussCodeError):
    """A symbol does not occur exactly twice."""

    def __init__(self, token, count):
        super().__init__(f"symbol {token!r} occurs {count} time(s), expected 2")
        self.token = token
        self.count = count


class UnknownSymbol(GaussCodeError):
    pass


class DimensionMismatch(GaussCodeError):
    pass


class SubsetOutOfRange(GaussCodeError):
    pass


class BitCountMismatch(GaussCodeError):
    pass


class LimitExceeded(GaussCodeError):
    """A size guard on an exhaustive routine was hit."""
