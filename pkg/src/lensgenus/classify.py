"""Closed-form classification and Berge-family matching.

At p = k^2 the genus-minimising q are exactly the residues of forms 0-3
(:func:`gm_q_set`).  For p > k^2 the triple (p, k^-2, k) is genus-minimising
exactly when p falls in one of the Berge families I-V (family VI is a
special case of V and is not reported separately); :func:`reduce_p` is the
bridge between the two regimes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Optional

from .errors import InvariantError, OutOfScopeError, UsageError
from .invariants import Triple, gbar, is_genus_minimizing, v_interval
from .modmath import inv, rep

FAMILIES = ("I_II", "III", "IV", "V")


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _forms(k: int):
    """Yield (family, form, witness, base) with ``+-base`` the matching residues.

    ``form`` names the multiplier (e.g. "2k+1") so distinct matches with the
    same witness stay distinguishable.
    """
    for i in range(k):
        if gcd(i, k) in (1, 2):
            # ik + 1 and ik - 1 are the two signs of the same family
            yield "I_II", "ik+1", i, None
    for d in _divisors(k - 1):
        if ((k - 1) // d) % 2:
            yield "III", "2k+1", d, d * (2 * k + 1)
        if d % 2:
            yield "V", "k-1", d, d * (k - 1)
    for d in _divisors(k + 1):
        if ((k + 1) // d) % 2:
            yield "III", "2k-1", d, d * (2 * k - 1)
        if d % 2:
            yield "V", "k+1", d, d * (k + 1)
    for d in _divisors(2 * k - 1):
        yield "IV", "k+1", d, d * (k + 1)
    for d in _divisors(2 * k + 1):
        yield "IV", "k-1", d, d * (k - 1)


@lru_cache(maxsize=None)
def _gm_q_set(k: int) -> frozenset[int]:
    N = k * k
    out = set()
    for i in range(k):
        if gcd(i, k) in (1, 2):
            out.add(rep(i * k + 1, N))
            out.add(rep(i * k - 1, N))
    for d in _divisors(k + 1):
        if ((k + 1) // d) % 2:
            out.add(rep((k + 1) // d * (k + 1), N))
        if d % 2:
            out.add(rep((k + 1) // d * (2 * k - 1), N))
    for d in _divisors(k - 1):
        if ((k - 1) // d) % 2:
            out.add(rep((k - 1) // d * (k - 1), N))
        if d % 2:
            out.add(rep((k - 1) // d * (2 * k + 1), N))
    for d in _divisors(2 * k + 1):
        out.add(rep((2 * k + 1) // d * (k - 1), N))
    for d in _divisors(2 * k - 1):
        out.add(rep((2 * k - 1) // d * (k + 1), N))
    out |= {rep(-x, N) for x in out}
    return frozenset(out)


def gm_q_set(k: int) -> frozenset[int]:
    """Residues q mod k^2 for which (k^2, q, k) is genus-minimising."""
    if k < 2:
        raise UsageError(f"k must be >= 2, got {k}")
    return _gm_q_set(k)


@dataclass(frozen=True)
class FamilyMatch:
    family: str
    sign: int
    witness: int
    form: str = ""
    congruence: int = 0

    def as_dict(self) -> dict:
        return {"family": self.family, "sign": self.sign, "witness": self.witness}

    def sort_key(self):
        return (FAMILIES.index(self.family), -self.sign, self.witness, self.form)

    def token(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"{self.family}{s}{self.witness}"


@dataclass(frozen=True)
class FamilyReport:
    p: int
    k: int
    matches: tuple[FamilyMatch, ...] = ()
    # False when gcd(p, k) != 1: the report is empty by convention
    coprime: bool = True

    def __bool__(self) -> bool:
        return bool(self.matches)

    def __iter__(self):
        return iter(self.matches)

    def __len__(self) -> int:
        return len(self.matches)


def match_families(p: int, k: int) -> FamilyReport:
    """Every Berge family (I-V) that p belongs to for the given k."""
    if k < 2:
        raise UsageError(f"k must be >= 2, got {k}")
    if gcd(p, k) != 1:
        return FamilyReport(p, k, (), coprime=False)
    N = k * k
    r = rep(p, N)
    found = set()
    for family, form, witness, base in _forms(k):
        if base is None:
            for sign in (1, -1):
                if rep(witness * k + sign, N) == r:
                    found.add(FamilyMatch(family, sign, witness, form.replace("+1", "+-1"), r))
            continue
        for sign in (1, -1):
            if rep(sign * base, N) == r:
                found.add(FamilyMatch(family, sign, witness, form, r))
    return FamilyReport(p, k, tuple(sorted(found, key=FamilyMatch.sort_key)))


@dataclass(frozen=True)
class ReducedTriple:
    p: int
    k: int
    triple: Triple
    eps_p: int
    n: int


def reduce_p(p: int, k: int) -> ReducedTriple:
    """Map (p, k^-2, k) with p > k^2 to the equivalent triple at modulus k^2."""
    N = k * k
    if p <= N:
        raise UsageError(f"reduction needs p > k^2, got p={p}, k={k}")
    if gcd(p, k) != 1:
        raise UsageError(f"reduction needs gcd(p, k) = 1, got p={p}, k={k}")
    n = rep(-inv(p, k), k)
    if (n * p + 1) % k:
        raise InvariantError(f"n p + 1 not divisible by k for p={p}, k={k}")
    return ReducedTriple(p, k, Triple(N, inv(rep(p, N), N), k), rep(-p, N), n)


def kinv2_triple(p: int, k: int) -> Triple:
    """The Gbar-triple (p, k^-2, k)."""
    return Triple(p, inv(rep(k * k, p), p), k)


@dataclass(frozen=True)
class ConjectureCheck:
    p: int
    q: int
    k: int
    congruence_ok: bool
    families: FamilyReport
    gm: bool
    gbar: int

    @property
    def eligible(self) -> bool:
        return self.congruence_ok and bool(self.families)

    @property
    def consistent(self) -> bool:
        return self.gm == bool(self.families)


def conjecture_check(p: int, q: int, k: int) -> ConjectureCheck:
    """Compare Berge-family membership of (p, k) with genus minimality."""
    if p <= k * k:
        raise OutOfScopeError(f"out of scope (p < k^2): p={p}, k={k}")
    if gcd(p, k) != 1:
        raise UsageError(f"gcd(p, k) != 1 for p={p}, k={k}")
    t = kinv2_triple(p, k)
    return ConjectureCheck(
        p, rep(q, p), k,
        congruence_ok=rep(q - k * k, p) == 0,
        families=match_families(p, k),
        gm=is_genus_minimizing(t),
        gbar=gbar(t).gbar,
    )


# --- the v-bar bridge between (p, k^-2, k) and the reduced triple ----------

@dataclass
class BridgeResult:
    p: int
    k: int
    points_equal: bool
    pairs_checked: int
    identity_ok: bool
    gbar_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.points_equal and self.identity_ok and self.gbar_ok


def _lifts_below(t: Triple, bound: int) -> list[int]:
    """Integers in [0, bound) congruent to a marked point of ``t``."""
    out = []
    for r in t.marked:
        out.extend(range(r, bound, t.p))
    return sorted(out)


def vbar_bridge(p: int, k: int, max_pairs: int = 20000,
                seed: Optional[int] = 0) -> BridgeResult:
    """Check the identity linking v on A = (k^2, eps, nk) and B = (p, k^2, (np+1)/k).

    On the common marked set in [0, p):  k^2 v_B(x, y) = p v_A(x, y) + k (y - x).
    Pairs are exhaustive up to ``max_pairs`` and a seeded sample beyond that.
    """
    red = reduce_p(p, k)
    N, n = k * k, red.n
    A = Triple(N, red.eps_p, n * k)
    B = Triple(p, rep(N, p), (n * p + 1) // k)
    pts_a = _lifts_below(A, p)
    pts_b = _lifts_below(B, p)
    res = BridgeResult(p, k, pts_a == pts_b, 0, True, True)
    if not res.points_equal:
        res.failures.append("marked sets differ on [0, p)")
        return res

    pts = pts_a
    total = len(pts) * (len(pts) - 1) // 2
    if total <= max_pairs:
        pairs = [(a, b) for ai, a in enumerate(pts) for b in pts[ai + 1:]]
    else:
        rng = random.Random(seed)
        pairs = []
        for _ in range(max_pairs):
            a, b = sorted(rng.sample(pts, 2))
            pairs.append((a, b))
    for x, y in pairs:
        lhs = N * v_interval(B, x, y)
        rhs = p * v_interval(A, x, y) + k * (y - x)
        if lhs != rhs:
            res.identity_ok = False
            res.failures.append(f"identity fails at ({x}, {y})")
            break
    res.pairs_checked = len(pairs)

    ga = gbar(A).gbar == gbar(red.triple).gbar
    gb = gbar(B).gbar == gbar(kinv2_triple(p, k)).gbar
    res.gbar_ok = ga and gb
    if not res.gbar_ok:
        res.failures.append("Gbar of A or B does not match")
    return res
