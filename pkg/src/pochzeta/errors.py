"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class PoleError(DomainError):
    """An argument hit a pole of the evaluated function."""


class PoleAtOne(PoleError):
    """The zeta pole at s = 1."""


class PrecisionError(ArithmeticError):
    """The precision context cannot support the requested computation.

    Raised instead of silently degrading: an order-k alternating binomial
    transform loses about 0.302*k decimal digits and the guard policy must
    cover that loss.
    """


class ParseError(ValueError):
    """A data file could not be parsed; carries the offending line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class OrderError(ValueError):
    """Table entries violate the required ordering."""


class CapacityError(ValueError):
    """A requested table exceeds the configured memory budget."""
