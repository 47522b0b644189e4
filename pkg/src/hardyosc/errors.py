"""Exception hierarchy shared by the symbolic and numeric layers."""


class HardyError(Exception):
    """Base class for all errors raised by hardyosc."""


class DivisionByZero(HardyError, ZeroDivisionError):
    pass


class NonMonomialPower(HardyError, ValueError):
    pass


class IrrationalCoefficientPower(HardyError, ValueError):
    pass


class NotShiftable(HardyError, ValueError):
    pass


class NonMonomialLog(HardyError, ValueError):
    pass


class NotEventuallyPositive(HardyError, ValueError):
    pass


class NotEventuallySigned(HardyError, ValueError):
    pass


class UndefinedIterLogDeriv(HardyError, ValueError):
    pass


class ZeroPolynomial(HardyError, ValueError):
    pass


class ExprSyntaxError(HardyError, ValueError):
    """Parse failure; ``pos`` is a 0-based offset into the source text."""

    def __init__(self, message, pos, text=""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


# numeric layer

class NumericError(HardyError):
    pass


class DepthTooLargeForNumerics(NumericError, ValueError):
    pass


class DomainError(NumericError, ValueError):
    pass


class StepSizeUnderflow(NumericError, ArithmeticError):
    pass


class ZeroInRange(NumericError, ValueError):
    pass


class HypothesisViolated(NumericError, ValueError):
    pass
