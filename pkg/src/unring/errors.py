"""Exception hierarchy shared by every module."""


class UnringError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatch(UnringError, ValueError):
    """Two elements (or an element and a context) do not share a context."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"context mismatch: {left} vs {right}")


class UnsupportedOperation(UnringError, TypeError):
    """The context has no such operation (e.g. subtraction in N)."""


class NotRepresentable(UnringError, ArithmeticError):
    """The result exists only in a wider context."""


class NotInvertible(UnringError, ArithmeticError):
    """The element has no inverse in this context."""

    def __init__(self, element, message="not invertible in this context"):
        self.element = element
        super().__init__(f"{message}: {element}")


class InvalidCarrier(UnringError, ValueError):
    """A finite operation table fails validation."""


class OracleBoundExceeded(UnringError, ValueError):
    """The carrier is too large for exhaustive enumeration."""


class CancellationNotGuaranteed(UnringError, ValueError):
    """Cross-multiplication is not a valid equality test over this base."""


class NotDivisibleByDt(UnringError, ArithmeticError):
    """f(x+dt) - f(x) has a non-zero real part; dividing by dt collapses."""


class VerticalAxisError(UnringError, ValueError):
    """A ratio on the vertical axis has no fraction."""


class AmbiguousTransport(UnringError, ValueError):
    """Consecutive loop entries are perpendicular."""


class OpenLoopError(UnringError, ValueError):
    """A monodromy loop does not return to its start."""


class DimensionMismatch(UnringError, ValueError):
    """Quantities with different units cannot be added."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"dimension mismatch: [{left}] vs [{right}]")


class ZeroMagnitudeDivisor(UnringError, ZeroDivisionError):
    """Division by a quantity whose scalar is zero."""


class ParseError(UnringError, ValueError):
    """Malformed input text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"syntax error at offset {offset}: {message}")
