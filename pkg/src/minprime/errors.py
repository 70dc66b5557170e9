"""Exception types shared by the search routines."""


class MinprimeError(Exception):
    """Base class for library errors."""


class GuardExceeded(MinprimeError):
    """An input is larger than the configured size guard allows."""


class SearchInconclusive(MinprimeError):
    """A backtracking search ran out of its node budget.

    This is deliberately not the same outcome as "no solution": callers that
    catch it must not treat the instance as a negative.
    """

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes
