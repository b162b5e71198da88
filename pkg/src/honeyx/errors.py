"""Exception types shared across the package."""


class HoneyxError(Exception):
    """Base class for all package errors."""


class MalformedProblem(HoneyxError):
    """An LP was structurally invalid (dimension mismatch, NaN, bad bounds).

    Signals a caller bug, not a numerical failure.
    """


class DimensionMismatch(HoneyxError):
    """Matrix or vector shapes do not line up."""


class BudgetViolation(HoneyxError):
    """A deception matrix exceeds its stealth budget beyond tolerance."""


class InvalidInterval(HoneyxError):
    """An interval box has lower bound above its upper bound."""


class InfeasibleLevel(HoneyxError):
    """A guarantee level was requested that no admissible deception induces."""


class SolverFailure(HoneyxError):
    """The LP kernel failed unexpectedly (iteration limit, internal error)."""
