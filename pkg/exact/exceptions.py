class ExactArithmeticError(Exception):
    """Base class for errors raised by exact scalar arithmetic."""


class ZeroDenominatorError(ExactArithmeticError, ZeroDivisionError):
    pass


class RationalFormatError(ExactArithmeticError, ValueError):
    pass


class PrecisionRefinementRequired(ExactArithmeticError):
    """Interval division by an interval that contains zero."""

    def __init__(self, divisor):
        self.divisor = divisor
        super().__init__(f"precision refinement required: divisor {divisor} contains 0")


class MixedRadicandError(ExactArithmeticError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"cannot combine values of Q(sqrt({left})) and Q(sqrt({right}))")


class SingularSystemError(ExactArithmeticError):
    pass
