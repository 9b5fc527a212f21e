"""Exception types shared across the package.

Validation and parameter problems raise plain ValueError; these classes cover
the two failure modes that callers (and the CLI exit-code contract) must be
able to tell apart from bad input.
"""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed its configured search-space budget.

    Raised loudly instead of silently downgrading to an approximation.
    """

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class CertificationError(RuntimeError):
    """A claimed numeric property failed an exhaustive or residual check."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap before reaching tolerance."""
