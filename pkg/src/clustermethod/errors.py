"""Exception types shared across the package."""


class ClusterMethodError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(ClusterMethodError, ValueError):
    """Malformed pattern, layout, series or parameter."""


class ResourceLimit(ClusterMethodError, RuntimeError):
    """A configured cap (brute-force size, poset size, state budget) was exceeded."""


class InsufficientTerms(ClusterMethodError, ArithmeticError):
    """A truncated series is too short for the requested numerical estimate."""
