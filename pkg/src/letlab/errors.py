class LetlabError(Exception):
    """Base class for every error raised by letlab."""


class ParseError(LetlabError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class FragmentError(LetlabError):
    """A formula uses a connective outside the selected fragment."""


class UnboundVariableError(LetlabError):
    pass


class BudgetExceeded(LetlabError):
    """An exhaustive search would exceed its configured evaluation budget."""


class ClauseViolation(LetlabError):
    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class ProofError(LetlabError):
    def __init__(self, message, path="root"):
        self.path = path
        super().__init__(f"{path}: {message}")
