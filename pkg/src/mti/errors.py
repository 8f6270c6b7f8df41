"""Exception types raised across the package."""


class MTIError(Exception):
    """Base class for all package errors."""


class NumericError(MTIError, ArithmeticError):
    """A numeric precondition was violated."""


class NotPositiveDefinite(NumericError):
    """Matrix is not (numerically) positive definite."""


class SingularSystem(NumericError):
    pass


class DegenerateDirection(NumericError):
    """A projection needed by the loading optimizer vanished."""


class ConstraintDirectionCollapse(NumericError):
    """Weights became orthogonal to the look direction."""


class ZeroSnapshot(NumericError):
    pass


class ZeroSteering(NumericError):
    pass


class ZeroPower(NumericError):
    pass


class OrderTooHigh(MTIError, ValueError):
    pass


class NegativeLoading(MTIError, ValueError):
    pass


class ConfigError(MTIError, ValueError):
    """Scenario configuration is invalid."""


class ParseError(ConfigError):
    """Configuration text could not be parsed.

    Carries the offending ``line`` number (1-based, or None) and ``field`` name
    when known.
    """

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
