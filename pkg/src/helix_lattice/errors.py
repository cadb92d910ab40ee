"""Exception types shared across the package."""


class HelixLatticeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HelixLatticeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(HelixLatticeError, ValueError):
    """A stated hypothesis of a check is violated by the inputs."""


class SingularBasisError(HelixLatticeError, ValueError):
    """Basis vectors are (numerically) linearly dependent."""

    def __init__(self, det: float, message: str | None = None):
        self.det = det
        super().__init__(message or f"basis is numerically singular (det = {det:.6g})")


class BudgetExceededError(HelixLatticeError, RuntimeError):
    """A search box or scan would exceed the configured work budget."""

    def __init__(self, message: str, cost: float | None = None, budget: float | None = None):
        self.cost = cost
        self.budget = budget
        super().__init__(message)
