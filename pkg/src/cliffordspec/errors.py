"""Exception types shared across the package."""


class ContractError(ValueError):
    """An operation was called with inputs violating its preconditions."""


class KindMismatchError(ContractError):
    """Exact and float operands were mixed without an explicit conversion."""


class SingularAtTolerance(ArithmeticError):
    """An eigenvalue sits within the tolerance of zero, so signature-based
    quantities (and the index) are undefined at this point."""

    def __init__(self, gap, tol):
        super().__init__(f"eigenvalue magnitude {gap:.3e} within tolerance {tol:.3e} of zero")
        self.gap = gap
        self.tol = tol


class SymmetryError(ContractError):
    """A required symmetry (self-dual, even/odd grading, ...) does not hold."""


class InterpolationError(RuntimeError):
    """Polynomial reconstruction failed its held-out consistency check."""


class TheoremViolation(RuntimeError):
    """A certified inequality failed; indicates a numerical or internal error."""
