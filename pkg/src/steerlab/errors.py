"""Exception types shared across steerlab.

All of them derive from ``ValueError`` so callers that only care about
"bad numeric input" can catch one thing; the CLI maps them to exit code 1.
"""


class DomainError(ValueError):
    """A numeric parameter is outside its admissible range."""


class DimensionError(ValueError):
    """Matrix or subsystem dimensions do not match."""


class UnsupportedError(ValueError):
    """Input is valid in general but outside what this library handles."""


class InfeasibleError(ValueError):
    """A requested construction does not exist (e.g. no parent POVM)."""


class IndeterminateError(RuntimeError):
    """A solver stopped without reaching a verdict."""
