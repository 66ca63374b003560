"""Exception types shared across the package."""


class MotifSwarmError(Exception):
    """Base class for all package-specific errors."""


class IngestError(MotifSwarmError):
    """Raised when an input file cannot be turned into a usable series."""


class InfeasibleTaskError(MotifSwarmError):
    """Raised when the series admits no valid motif for the given task."""


class BudgetExceededError(MotifSwarmError):
    """Raised when an exhaustive search would exceed its evaluation budget."""
