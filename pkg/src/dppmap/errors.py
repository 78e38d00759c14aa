"""Exception types shared across the package."""


class SingularKernelError(ValueError):
    """Kernel matrix is numerically singular (or not positive definite)."""


class SingularPivotError(ValueError):
    """A Cholesky pivot fell below the numerical floor."""


class StaleRowError(RuntimeError):
    """A gain was requested for a row whose factor entries are out of date."""


class EnumerationLimitError(ValueError):
    """Exhaustive enumeration was requested beyond the hard size guard."""
