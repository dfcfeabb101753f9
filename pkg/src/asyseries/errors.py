"""Exception hierarchy shared by the solvers, catalog and numerics."""


class AsySeriesError(Exception):
    """Base class for all errors raised by this package."""


class NormalizationError(AsySeriesError, ValueError):
    """A coefficient stream violates the normalization its relation kind needs."""


class InsufficientCoefficientsError(AsySeriesError, IndexError):
    """An explicit coefficient list is too short for the requested order."""

    def __init__(self, index: int, available: int):
        self.index = index
        self.available = available
        super().__init__(
            f"insufficient coefficients: a_{index} required, "
            f"only a_0..a_{available - 1} provided"
        )


class ExpansionOnlyError(AsySeriesError):
    """The sequence has no exact evaluator, so it cannot be checked numerically."""


class PrecisionFloorError(AsySeriesError, ArithmeticError):
    """A truncation error fell below what the working precision can resolve."""


class DegenerateConvergenceError(AsySeriesError, ArithmeticError):
    """The truncation error is exactly zero; no convergence rate exists."""
