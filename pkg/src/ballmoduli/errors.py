"""Exception types shared across the package."""


class BallModuliError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(BallModuliError, ValueError):
    """Coordinate count does not match the space dimension."""


class DomainError(BallModuliError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class DescriptorError(BallModuliError, ValueError):
    """Malformed space descriptor."""


class BudgetError(BallModuliError, RuntimeError):
    """The evaluation budget cannot certify the requested resolution."""


class BallConstructionError(BallModuliError, RuntimeError):
    """Structured failure of the separating-ball recipe.

    Carries the first postcondition (or feasibility condition) that could
    not be met, so callers can distinguish "the space lacks the needed
    dual geometry" from plain bad input.
    """

    def __init__(self, condition: str, details: str = ""):
        self.condition = condition
        self.details = details
        msg = f"separating-ball construction failed: {condition}"
        if details:
            msg = f"{msg} ({details})"
        super().__init__(msg)
