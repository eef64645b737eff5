"""Exceptions raised by CayleyPro"""


class PreconditionError(ValueError):
    """Raised when a graph or a table does not satisfy a property an operation requires.

    Attributes
    ----------
    flag : str
        Name of the failed property, e.g. "deterministic" or "arc-symmetric".
    """
    def __init__(self, flag, message=None):
        self.flag = flag
        super().__init__(message if message is not None else f"Precondition failed: graph is not {flag}")


class BudgetExceededError(RuntimeError):
    """Raised when a search exhausts its node budget before reaching a verdict. Never means a negative answer."""
    def __init__(self, what, budget):
        self.what = what
        self.budget = budget
        super().__init__(f"{what} exceeded its budget of {budget} nodes, verdict is undecided")
