"""
Exception hierarchy for radoforge.

Every error derives from RadoforgeError and from the builtin that callers
would naturally catch for the same situation (ValueError for bad input,
RuntimeError for searches that gave up).
"""

from typing import Optional


class RadoforgeError(Exception):
    """Base class for all radoforge errors."""


class PreconditionError(RadoforgeError, ValueError):
    """An operation was called outside its documented preconditions."""


class CapacityError(RadoforgeError, ValueError):
    """A dense relation or hypergraph would exceed the storage cap."""


class InvalidArityError(RadoforgeError, ValueError):
    """Hyperedge arity out of range for the universe size."""


class SignatureMismatchError(RadoforgeError, ValueError):
    """Structure signature does not match what the operation expects."""


class ConfigError(RadoforgeError, ValueError):
    """radoforge.yaml could not be read or validated."""


class ParseError(RadoforgeError, ValueError):
    """Malformed text input; carries the 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(RadoforgeError, RuntimeError):
    """Exhaustive work would exceed the configured budget."""

    def __init__(self, what: str, required: int, budget: int):
        self.what = what
        self.required = required
        self.budget = budget
        super().__init__(
            f"{what}: required work {required:.3e} exceeds budget {budget:.3e}"
        )


class InfeasibleParametersError(RadoforgeError, ValueError):
    """Universe too small for the requested construction."""

    def __init__(self, message: str, minimal_n: Optional[int] = None):
        self.minimal_n = minimal_n
        if minimal_n is not None:
            message = f"{message} (minimal feasible n: {minimal_n})"
        super().__init__(message)


class ExhaustedTriesError(RadoforgeError, RuntimeError):
    """A randomized-with-verification search ran out of attempts."""

    def __init__(self, what: str, tries: int):
        self.tries = tries
        super().__init__(f"{what}: no verified result after {tries} tries")


class ConstructionError(RadoforgeError, RuntimeError):
    """A builder could not produce a verified object."""


class OrderViolationError(RadoforgeError, ValueError):
    """The surjective entropy order fails; carries the least violating k."""

    def __init__(self, message: str, violating_k: int):
        self.violating_k = violating_k
        super().__init__(f"{message} (violating k={violating_k})")


class InternalInconsistencyError(RadoforgeError, RuntimeError):
    """Two independent computations of the same quantity disagree."""
