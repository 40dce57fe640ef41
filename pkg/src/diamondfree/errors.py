"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(ValueError):
    """An input exceeds the size caps for exhaustive computation."""


class ValidationError(ValueError):
    """A structured input violates one of its invariants.

    The message names the violated clause.
    """


class UnsupportedCaseError(ValueError):
    """The input falls in a case the operation deliberately rejects."""
