"""Exception hierarchy shared by all lpdecode modules."""


class LpDecodeError(Exception):
    """Base class for every error raised by the package."""


class DimensionTooLarge(LpDecodeError):
    pass


class TrivialCode(LpDecodeError):
    pass


class UnsupportedLength(LpDecodeError):
    pass


class ParseError(LpDecodeError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegreeMismatch(ParseError):
    pass


class UnknownName(LpDecodeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidMatrix(LpDecodeError, ValueError):
    pass


class InvalidRate(LpDecodeError, ValueError):
    pass


class NumericalFailure(LpDecodeError):
    pass


class ZeroVector(LpDecodeError, ValueError):
    pass


class RayLimitExceeded(LpDecodeError):
    def __init__(self, limit, reached):
        self.limit = limit
        self.reached = reached
        super().__init__(f"intermediate ray count {reached} exceeds limit {limit}")


class EmptyList(LpDecodeError, ValueError):
    pass


class EmptySpectrum(LpDecodeError, ValueError):
    pass


class NodeBudgetExceeded(LpDecodeError):
    pass


class NonOrthogonalCut(LpDecodeError, ValueError):
    pass


class InvalidCut(LpDecodeError, ValueError):
    pass
