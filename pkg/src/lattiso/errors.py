"""Exception types shared across the package."""


class LatticeError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(LatticeError):
    pass


class SingularMatrix(LatticeError):
    pass


class NotSymmetric(LatticeError):
    pass


class NotPositiveDefinite(LatticeError):
    pass


class ZeroLattice(LatticeError):
    pass


class RankDeficient(LatticeError):
    pass


class NotSublattice(LatticeError):
    pass


class BoundTooLarge(LatticeError):
    """Predicted enumeration work exceeds the safety cap."""


class NotUnique(LatticeError):
    """Chain extraction hit a tied minimum.

    A signal for resampling loops, not a failure: `step` is the 1-based
    step at which the minimum was attained by two or more vectors.
    """

    def __init__(self, step):
        super().__init__(f"tied minimum at chain step {step}")
        self.step = step


class RetryLimitExceeded(LatticeError):
    pass


class CapExceeded(LatticeError):
    pass


class PreconditionViolated(LatticeError):
    pass


class WidthTooSmall(LatticeError):
    pass
