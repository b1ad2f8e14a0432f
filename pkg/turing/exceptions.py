class EffectiveEvaluationError(Exception):
    """Base class for errors of Turing-side effective evaluation."""


class PrecisionExhausted(EffectiveEvaluationError):
    """Refinement needed oracle queries deeper than the configured budget.

    Typically signals a discontinuity of the evaluated map at the input.
    """

    def __init__(self, precision, budget, reason=''):
        self.precision = precision
        self.budget = budget
        self.reason = reason
        message = f"precision exhaustion: target 2^-{precision} not reached within query depth {budget}"
        if reason:
            message = f"{message} ({reason})"
        super().__init__(message)


class DomainViolation(EffectiveEvaluationError):
    pass


class TransparencyCheckError(EffectiveEvaluationError):
    pass
