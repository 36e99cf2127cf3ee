"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(ArithmeticError):
    """A linear-algebra or integration step failed numerically."""


class PoleError(ArithmeticError):
    """The (z, zeta) chart hit its coordinate singularity at |z| = 1.

    ``s`` is the dimensionless time at which it happened (None for a bare
    right-hand-side evaluation) and ``trajectory`` holds the samples computed
    before the failure, when raised from an integration.
    """

    def __init__(self, message, s=None, trajectory=None):
        super().__init__(message)
        self.s = s
        self.trajectory = trajectory
