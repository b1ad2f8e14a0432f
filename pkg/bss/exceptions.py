class BssError(Exception):
    """Base class for BSS program and interpreter errors."""


class ProgramIssue:

    def __init__(self, location, message):
        self.location = location
        self.message = message

    def __str__(self):
        return f"{self.location}: {self.message}"

    def __repr__(self):
        return f"ProgramIssue({self.location!r}, {self.message!r})"


class ProgramParseError(BssError):

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__('; '.join(str(issue) for issue in self.issues))


class BssRuntimeError(BssError):

    def __init__(self, node, message):
        self.node = node
        super().__init__(f"node {node}: {message}")


class InputArityError(BssError):
    pass


class NonTerminationError(BssError):

    def __init__(self, max_steps):
        self.max_steps = max_steps
        super().__init__(f"program did not halt within {max_steps} steps")


class CompileError(BssError):
    pass
