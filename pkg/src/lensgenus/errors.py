"""Exception types shared across the package."""


class UsageError(ValueError):
    """Caller violated a documented precondition."""


class NotAUnitError(UsageError):
    """Raised by :func:`lensgenus.modmath.inv` for a non-invertible residue."""

    def __init__(self, x: int, modulus: int, gcd: int):
        super().__init__(f"{x} is not a unit mod {modulus} (gcd={gcd})")
        self.x = x
        self.modulus = modulus
        self.gcd = gcd


class InvariantError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class OutOfScopeError(UsageError):
    """Input lies in a regime the package deliberately does not handle (p <= k^2)."""
