"""The simple-knot invariants: the pair map v, the f-profile, G, Gbar and genus.

A triple ``(p, q, k)`` always means a Gbar-triple here unless a function
says otherwise; ``big_g`` takes a G-triple.  ``Gbar(p, q, k) = G(p, q^-1, k)``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import gcd
from typing import Optional, Sequence

from .errors import InvariantError, UsageError
from .modmath import inv, rep


@dataclass(frozen=True)
class Triple:
    p: int
    q: int
    k: int

    def __post_init__(self):
        if self.p < 2:
            raise UsageError(f"p must be >= 2, got {self.p}")
        if gcd(self.q, self.p) != 1:
            raise UsageError(f"q={self.q} is not a unit mod p={self.p}")
        if self.k % self.p == 0:
            raise UsageError(f"k={self.k} is 0 mod p={self.p}")

    @property
    def kappa(self) -> int:
        """``[k]_p``, the number of marked points."""
        return self.k % self.p

    @cached_property
    def marked(self) -> tuple[int, ...]:
        """Sorted residues of ``Q = {a q : 0 <= a < kappa}``."""
        p, q = self.p, self.q
        return tuple(sorted((a * q) % p for a in range(self.kappa)))

    def inverse(self) -> "Triple":
        return Triple(self.p, inv(self.q, self.p), self.k)


def count_lifts(residues: Sequence[int], modulus: int, x: int, y: int) -> int:
    """Number of integers in ``(x, y]`` congruent to one of ``residues``.

    ``residues`` must be sorted and reduced.  ``x <= y`` is required.
    """
    if y < x:
        raise UsageError("count_lifts needs x <= y")

    def upto(z: int) -> int:
        # lifts in (-inf, z] minus a constant; only differences matter
        full, r = divmod(z, modulus)
        return full * len(residues) + bisect_right(residues, r)

    return upto(y) - upto(x)


def v_interval(t: Triple, x: int, y: int) -> int:
    """v on explicit integer lifts ``x <= y``."""
    n_int = y - x
    n_q = count_lifts(t.marked, t.p, x, y)
    return n_int * t.kappa - n_q * t.p


def v_pair(t: Triple, x: int, y: int) -> int:
    """v(x, y) for residues, using the lift with ``0 <= y~ - x~ < p``.

    Antisymmetric, and ``v(x, x) == 0``.
    """
    x %= t.p
    return v_interval(t, x, x + rep(y - x, t.p))


@dataclass(frozen=True)
class FProfile:
    values: tuple[int, ...]
    degree: int


def f_profile(t: Triple) -> FProfile:
    """The sequence ``f(0..p)`` whose spread is the Alexander-polynomial degree."""
    p, q, kappa = t.p, t.q, t.kappa
    values = [0]
    f = 0
    for i in range(p):
        f += kappa - p if (i * q) % p < kappa else kappa
        values.append(f)
    if values[p] != 0:
        raise InvariantError(f"f({p}) = {values[p]} != 0 for {t}")
    body = values[:p]
    return FProfile(tuple(values), max(body) - min(body))


def big_g(t: Triple) -> int:
    """``G(p, q, k)``: degree of the rescaled Alexander polynomial (O(p))."""
    return f_profile(t).degree


def genus(t: Triple) -> int:
    """Genus of the simple knot for the G-triple ``t``.

    Undefined (half-integral) when p and [k]_p are both even.
    """
    if t.p % 2 == 0 and t.kappa % 2 == 0:
        raise UsageError(f"genus is not an integer when p and k are both even: {t}")
    num = big_g(t) - t.p + 1
    if num < 0 or num % 2:
        raise InvariantError(f"G - p + 1 = {num} for {t}")
    return num // 2


class GbarMode(str, Enum):
    FAST = "fast"
    ORACLE = "oracle"
    FULL = "full"


@dataclass(frozen=True)
class GbarResult:
    gbar: int
    # Q-pair bookkeeping, only filled in by the fast path
    argmax_count: Optional[int] = None
    max_pair: Optional[tuple[int, int]] = None


def _gbar_fast(t: Triple) -> GbarResult:
    p, kappa = t.p, t.kappa
    # v(t_i, t_j) = h(j) - h(i) for every pair of marked points
    h = [r * kappa - i * p for i, r in enumerate(t.marked)]
    hi, lo = max(h), min(h)
    n_hi = h.count(hi)
    n_lo = h.count(lo)
    pair = (t.marked[h.index(lo)], t.marked[h.index(hi)])
    return GbarResult(hi - lo + p - kappa, n_hi * n_lo, pair)


def _gbar_full(t: Triple) -> GbarResult:
    p, kappa = t.p, t.kappa
    in_q = bytearray(p)
    for r in t.marked:
        in_q[r] = 1
    H = hi = lo = 0
    for x in range(1, p):
        H += kappa - p * in_q[x]
        hi = max(hi, H)
        lo = min(lo, H)
    return GbarResult(hi - lo)


def gbar(t: Triple, mode: GbarMode | str = GbarMode.FAST) -> GbarResult:
    """Gbar by one of three independent routes.

    ``fast``   sorts the marked points, O(kappa log kappa);
    ``oracle`` is G of the inverse triple, O(p);
    ``full``   maximises v over all of Z/p via a prefix potential, O(p).
    """
    mode = GbarMode(mode)
    if mode is GbarMode.FAST:
        return _gbar_fast(t)
    if mode is GbarMode.ORACLE:
        return GbarResult(big_g(t.inverse()))
    return _gbar_full(t)


def max_abs_v(t: Triple) -> int:
    """``max |v(x, y)|`` over marked pairs."""
    r = _gbar_fast(t)
    return r.gbar - t.p + t.kappa


def is_genus_minimizing(t: Triple) -> bool:
    return max_abs_v(t) < t.p + t.kappa
