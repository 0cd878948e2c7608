"""Exact residue arithmetic.

Everything here works on plain Python integers, so there is no overflow
guard to worry about.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotAUnitError, UsageError


def _check_modulus(N: int) -> None:
    if N < 2:
        raise UsageError(f"modulus must be >= 2, got {N}")


def rep(x: int, N: int) -> int:
    """The representative of ``x`` in ``{0, ..., N-1}`` (floored division)."""
    _check_modulus(N)
    return x % N


def inv(x: int, N: int) -> int:
    """Inverse of ``x`` modulo ``N``.

    Raises :class:`NotAUnitError` (carrying the gcd) when none exists.
    """
    _check_modulus(N)
    g = gcd(x, N)
    if g != 1:
        raise NotAUnitError(x, N, g)
    return pow(x, -1, N)


def sigma(n: int, s: int) -> int:
    """Sign of a residue ``s`` that is congruent to +1 or -1 mod ``n``.

    ``n == 2`` always gives -1 and ``n == 1`` always gives +1, since the
    two classes coincide there.
    """
    if n < 1:
        raise UsageError(f"sigma needs n >= 1, got {n}")
    if n == 1:
        return 1
    if n == 2:
        if s % 2 != 1:
            raise UsageError(f"{s} is not +-1 mod 2")
        return -1
    r = s % n
    if r == 1:
        return 1
    if r == n - 1:
        return -1
    raise UsageError(f"{s} is not +-1 mod {n}")


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        if not 0 <= self.value < self.modulus:
            raise UsageError(f"{self.value} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, x: int, N: int) -> "Residue":
        return cls(rep(x, N), N)

    def __int__(self) -> int:
        return self.value
