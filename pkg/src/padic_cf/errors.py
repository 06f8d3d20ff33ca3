"""Exception vocabulary shared by the library and the command line."""


class PAdicError(Exception):
    """Base class for all errors raised by this package."""

    kind = "PAdicError"


class NotPrime(PAdicError, ValueError):
    kind = "NotPrime"


class NotIntegral(PAdicError, ValueError):
    kind = "NotIntegral"


class PrecisionTooLow(PAdicError, ValueError):
    kind = "PrecisionTooLow"


class PrecisionExhausted(PAdicError, ArithmeticError):
    kind = "PrecisionExhausted"


class DivisionByZero(PAdicError, ZeroDivisionError):
    kind = "DivisionByZero"


class InvariantViolation(PAdicError, ValueError):
    kind = "InvariantViolation"


class EmptyInput(PAdicError, ValueError):
    kind = "EmptyInput"


class SourceExhausted(PAdicError):
    kind = "SourceExhausted"


class NotDyadic(PAdicError, ValueError):
    """Raised when a rational is not of the form m * p**k."""

    kind = "NotDyadic"


class ParseError(PAdicError, ValueError):
    kind = "ParseError"


class OrbitNotTerminated(PAdicError):
    """The tau-orbit did not reach 0 or -p within the iteration cap.

    The truncated expansion is kept on ``expansion`` so callers can inspect
    the residual iterate or retry with a larger cap.
    """

    kind = "OrbitNotTerminated"

    def __init__(self, expansion, cap):
        self.expansion = expansion
        self.cap = cap
        super().__init__(
            f"orbit did not terminate within {cap} steps "
            f"(residual {expansion.residual}); raise the cap"
        )
