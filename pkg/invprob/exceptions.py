class InverseProblemError(Exception):
    """Base class for inverse problem errors."""


class InstanceFormatError(InverseProblemError):

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"field '{field}': {message}")


class DegenerateInstanceError(InverseProblemError):

    def __init__(self, support, message='degenerate instance'):
        self.support = tuple(support)
        super().__init__(f"{message} (support {list(self.support)})")


class InfeasibleInstanceError(InverseProblemError):

    def __init__(self, witness, message='infeasible instance'):
        self.witness = witness
        super().__init__(f"{message}: {witness}")


class BernsteinDegreeError(InverseProblemError):

    def __init__(self, required, cap):
        self.required = required
        self.cap = cap
        super().__init__(f"Bernstein degree {required} required, cap is {cap}")


class DomainCheckError(InverseProblemError):
    pass
