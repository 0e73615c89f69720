"""Exception types raised by divbounds."""


class DivergenceError(ValueError):
    """Base class for all input and domain errors in this package."""


class NonPositiveEntry(DivergenceError):
    pass


class NotNormalized(DivergenceError):
    pass


class TooShort(DivergenceError):
    pass


class LengthMismatch(DivergenceError):
    pass


class BadDimension(DivergenceError):
    pass


class BadFloor(DivergenceError):
    pass


class ParseError(DivergenceError):
    pass


class DegenerateInterval(DivergenceError):
    """Raised when a bound needs r < R but the interval has collapsed."""


class NonPositiveArgument(DivergenceError):
    pass


class InvalidGenerator(DivergenceError):
    """A generator failed normalization, convexity or derivative checks."""


class NoGenerator(DivergenceError):
    pass


class NoClosedForm(DivergenceError):
    pass


class BadInterval(DivergenceError):
    pass


class DegeneratePair(DivergenceError):
    """Raised when P = Q makes a ratio certificate undefined."""


class UnknownName(DivergenceError):
    """An unrecognised measure or relation name."""
