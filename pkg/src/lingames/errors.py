"""Exception types shared across the package."""


class GameFormatError(ValueError):
    """Raised when a game file or in-memory matrix violates the game format."""


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured operation budget.

    ``progress`` carries whatever partial information the caller may want to
    report (how far the search got, the requested cost, ...).
    """

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = dict(progress or {})


class ConvergenceError(RuntimeError):
    """An iterative numeric routine did not reach its tolerance."""


class ConsistencyError(RuntimeError):
    """Two independent computations that must agree did not."""
