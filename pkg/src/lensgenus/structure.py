"""z-tuple decomposition of the marked points at p = k^2, and mobile points.

For q of positive type with parameter d > 1, the k marked points
``Q_q = {a q : 0 <= a < k}`` split into d runs

    z^j_i = ([j eps]_d + i d) q,   0 <= i <= n_j,   eps = [-k]_d,

each advancing by ``[dq]_{k^2}``; run j ends a gap ``psi`` before run j+1
starts.  As j varies the offsets between points of different runs hop
between two values that differ by ``[dq]``; the points doing the hopping
are the (pseudo/antipseudo)mobile points reported by :func:`mobile_report`.

All structural statements proved about these objects assume k > 100.
They are computed for any k > 2 but only meant to be enforced above 100.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

import numpy as np

from .errors import InvariantError, UsageError
from .invariants import Triple, is_genus_minimizing, v_pair
from .modmath import rep
from .params import ParamSet, QType, derive_params

#: below this k the structural propositions are reported, not enforced
STRICT_K = 100


def _check_d_eps(d: int, eps: int) -> None:
    if d < 2 or not 0 < eps < d or gcd(d, eps) != 1:
        raise UsageError(f"need d >= 2, 0 < eps < d, gcd(d, eps) = 1; got d={d}, eps={eps}")


def theta(d: int, eps: int, j: int) -> int:
    """Indicator that run j is one shorter; both definitions are evaluated."""
    _check_d_eps(d, eps)
    by_threshold = 1 if (j * eps) % d >= d - eps else 0
    by_floor = ((j + 1) * eps) // d - (j * eps) // d
    if by_threshold != by_floor:
        raise InvariantError(f"theta mismatch at d={d}, eps={eps}, j={j}")
    return by_threshold


def theta_row(d: int, eps: int) -> np.ndarray:
    """``theta(d, eps, j)`` for j = 0..d-1 as an array, same double check."""
    _check_d_eps(d, eps)
    j = np.arange(d, dtype=np.int64)
    by_threshold = ((j * eps) % d >= d - eps).astype(np.int64)
    by_floor = ((j + 1) * eps) // d - (j * eps) // d
    if not np.array_equal(by_threshold, by_floor):
        raise InvariantError(f"theta mismatch at d={d}, eps={eps}")
    return by_threshold


def xi_sum(d: int, eps: int, l: int, j: int) -> int:
    """``d * Xi^{d,eps}_l(j)``: deviation of the theta partial sum from its mean.

    Kept as the integer numerator so no fractions are involved.
    """
    _check_d_eps(d, eps)
    l, j = l % d, j % d
    return l * eps - d * (((j + l) * eps) // d - (j * eps) // d)


def xi_table(d: int, eps: int) -> np.ndarray:
    """``d * Xi_l(j)`` for all l (rows) and j (columns) in Z/d."""
    _check_d_eps(d, eps)
    r = np.arange(d, dtype=np.int64)
    l, j = r[:, None], r[None, :]
    return l * eps - d * (((j + l) * eps) // d - (j * eps) // d)


@dataclass(frozen=True)
class ZDecomposition:
    k: int
    q: int
    d: int
    eps_d: int
    n_lengths: tuple[int, ...]
    z: tuple[tuple[int, ...], ...]
    psi: int
    psibar: int
    params: ParamSet = field(repr=False, compare=False)

    @property
    def modulus(self) -> int:
        return self.k * self.k

    @property
    def dq(self) -> int:
        return rep(self.d * self.q, self.modulus)

    def at(self, j: int, i: int) -> int:
        """``z^j_i`` with j taken mod d; negative i counts from the run end."""
        run = self.z[j % self.d]
        return run[i]

    def last(self, j: int) -> int:
        return self.z[j % self.d][-1]

    def flat(self) -> list[int]:
        """``z_r = [r d]_k q`` for r = 0..k-1, i.e. the runs concatenated."""
        return [x for run in self.z for x in run]


def z_decompose(k: int, q: int) -> ZDecomposition:
    ps = derive_params(k, q)
    if ps.q_type is not QType.POSITIVE:
        raise UsageError(f"q={q} is of {ps.q_type.value} type, need Positive")
    N = k * k
    q = ps.q
    d = ps.d
    eps = rep(-k, d)
    base = k // d
    n = tuple(base - theta(d, eps, j) for j in range(d))
    z = tuple(
        tuple(rep((rep(j * eps, d) + i * d) * q, N) for i in range(n[j] + 1))
        for j in range(d)
    )
    psi = rep(d * q - k * q, N)
    zd = ZDecomposition(k, q, d, eps, n, z, psi, N - psi, ps)
    _check_decomposition(zd)
    return zd


def _check_decomposition(zd: ZDecomposition) -> None:
    k, d, N = zd.k, zd.d, zd.modulus
    if sum(x + 1 for x in zd.n_lengths) != k:
        raise InvariantError("runs do not partition Q")
    if sorted(zd.flat()) != sorted(rep(a * zd.q, N) for a in range(k)):
        raise InvariantError("runs are not the marked points")
    if sum(theta(d, zd.eps_d, j) for j in range(d)) != zd.eps_d:
        raise InvariantError("theta does not sum to eps")
    for j in range(d):
        run = zd.z[j]
        for a, b in zip(run, run[1:]):
            if rep(b - a, N) != zd.dq:
                raise InvariantError(f"run {j} does not step by dq")
        if rep(zd.at(j + 1, 0) - zd.last(j), N) != zd.psi:
            raise InvariantError(f"gap after run {j} is not psi")
    ps = zd.params
    expect = rep((ps.mu * ps.m + ps.gamma * ps.c) * k + ps.alpha - ps.gamma * ps.cofactor * k, N)
    if zd.psi != expect:
        raise InvariantError("psi disagrees with its parametric form")


def difference_formula_holds(zd: ZDecomposition) -> bool:
    """z^{j+l}_0 - z^j_0 = [mu m l]_d k^2/d + Xi_l(j) [dq]  for all j, l.

    Checked in integers scaled by d, since k^2/d is fractional.
    """
    ps, d, N = zd.params, zd.d, zd.modulus
    for l in range(d):
        for j in range(d):
            num = rep(ps.mu * ps.m * l, d) * N + xi_sum(d, zd.eps_d, l, j) * zd.dq
            if num % d:
                return False
            if rep(num // d, N) != rep(zd.at(j + l, 0) - zd.at(j, 0), N):
                return False
    return True


# --- mobile points -------------------------------------------------------

@dataclass(frozen=True)
class MobilePoint:
    """One (pseudo/antipseudo)mobile point.

    ``window`` is "z0" for intervals <z^j_i, z^j_{i+1}], "zn" for
    <z^j_{n_j-(i+1)}, z^j_{n_j-i}], "psi" for <z^{j-1}_{n_{j-1}}, z^j_0] and
    "psibar" for <z^j_0, z^{j-1}_{n_{j-1}}].  ``i`` is None for the last two.
    ``offset`` is the minq (R) or maxq (L) value as a residue mod k^2.
    """
    kind: str
    window: str
    l: int
    i: Optional[int]
    offset: int
    active_times: tuple[int, ...]
    expected_active: int

    @property
    def activity_ok(self) -> bool:
        return len(self.active_times) == self.expected_active


@dataclass(frozen=True)
class NeutralizedPair:
    window: str
    i: Optional[int]
    l_right: int
    l_left: int
    complementary: bool


@dataclass(frozen=True)
class MobileReport:
    mobile: tuple[MobilePoint, ...] = ()
    pseudomobile: tuple[MobilePoint, ...] = ()
    antipseudomobile: tuple[MobilePoint, ...] = ()
    neutralized_pairs: tuple[NeutralizedPair, ...] = ()

    def all_points(self):
        return self.mobile + self.pseudomobile + self.antipseudomobile


def _hop(diffs: list[int], step: int, N: int) -> tuple[int, int]:
    """Split a two-valued family into (minq, maxq) with maxq = minq + step."""
    vals = set(diffs)
    if len(vals) != 2:
        raise InvariantError(f"expected a two-valued family, got {sorted(vals)}")
    a, b = vals
    if rep(a + step, N) == b:
        return a, b
    if rep(b + step, N) == a:
        return b, a
    raise InvariantError(f"values {a}, {b} do not differ by {step}")


def _right(zd, window, l, i, diffs, bound, expected):
    lo, _ = _hop(diffs, zd.dq, zd.modulus)
    if not 0 < lo < bound:
        return None
    times = tuple(j for j, x in enumerate(diffs) if x == lo)
    return MobilePoint("R", window, l, i, lo, times, expected)


def _left(zd, window, l, i, diffs, bound, expected):
    N = zd.modulus
    _, hi = _hop(diffs, zd.dq, N)
    # -bound < hi < 0 for the lift of hi in (-N, 0]
    if not N - bound < hi < N:
        return None
    times = tuple(j for j, x in enumerate(diffs) if x == hi)
    return MobilePoint("L", window, l, i, hi, times, expected)


def mobile_report(zd: ZDecomposition) -> MobileReport:
    """Enumerate every mobile, pseudomobile and antipseudomobile point."""
    d, N, dq = zd.d, zd.modulus, zd.dq
    if d < 2:
        return MobileReport()
    eps = zd.eps_d
    n = zd.n_lengths
    z0 = lambda j: zd.at(j, 0)
    zn = zd.last
    zi = lambda j, i: zd.at(j, i)
    zni = lambda j, i: zd.at(j, n[j % d] - i)
    Js = range(d)
    act = lambda l: rep(l * eps, d)

    mobile = []
    for i in range(k_over_d(zd) - 1):
        for l in range(d):
            if l != 0:
                mobile.append(_right(zd, "z0", l, i,
                                     [rep(z0(j + l) - zi(j, i), N) for j in Js], dq, act(l)))
                mobile.append(_left(zd, "zn", l, i,
                                    [rep(zn(j - l) - zni(j, i), N) for j in Js], dq, act(l)))
            if l != 1:
                mobile.append(_right(zd, "zn", l, i,
                                     [rep(z0(j + l) - zni(j, i + 1), N) for j in Js], dq, act(l - 1)))
                mobile.append(_left(zd, "z0", l, i,
                                    [rep(zn(j - l) - zi(j, i + 1), N) for j in Js], dq, act(l - 1)))
    mobile = [m for m in mobile if m is not None]

    pseudo, anti = [], []
    for l in range(1, d):
        pseudo.append(_right(zd, "psi", l, None,
                             [rep(z0(j + l) - zn(j - 1), N) for j in Js], zd.psi, act(l)))
        pseudo.append(_left(zd, "psi", l, None,
                            [rep(zn(j - 1 - l) - z0(j), N) for j in Js], zd.psi, act(l)))
        anti.append(_right(zd, "psibar", l, None,
                           [rep(z0(j + l) - z0(j), N) for j in Js], zd.psibar, act(l)))
        anti.append(_left(zd, "psibar", l, None,
                          [rep(zn(j - 1 - l) - zn(j - 1), N) for j in Js], zd.psibar, act(l)))
    pseudo = [m for m in pseudo if m is not None]
    anti = [m for m in anti if m is not None]

    pairs = _neutralized(mobile, d, lambda l: 1 - l) + \
        _neutralized(pseudo, d, lambda l: -l) + \
        _neutralized(anti, d, lambda l: -l)
    return MobileReport(tuple(mobile), tuple(pseudo), tuple(anti), tuple(pairs))


def _neutralized(points, d, partner):
    """Pairs (R at l, L at partner(l)) sharing a window."""
    lefts = {(m.window, m.i, m.l): m for m in points if m.kind == "L"}
    out = []
    for r in points:
        if r.kind != "R":
            continue
        other = lefts.get((r.window, r.i, partner(r.l) % d))
        if other is None:
            continue
        comp = set(r.active_times).isdisjoint(other.active_times) and \
            len(r.active_times) + len(other.active_times) == d
        out.append(NeutralizedPair(r.window, r.i, r.l, other.l, comp))
    return out


def k_over_d(zd: ZDecomposition) -> int:
    return zd.k // zd.d


def is_neutralized(report: MobileReport, point: MobilePoint) -> bool:
    for pr in report.neutralized_pairs:
        if pr.window != point.window or pr.i != point.i:
            continue
        if (point.kind == "R" and pr.l_right == point.l) or \
                (point.kind == "L" and pr.l_left == point.l):
            return True
    return False


# --- consecutive v spectrum ----------------------------------------------

@dataclass(frozen=True)
class SpectrumResult:
    r_star: Optional[int]
    spectrum_ok: bool
    values: tuple[int, ...]


def consecutive_v_check(k: int, q: int) -> SpectrumResult:
    """v over consecutive z-points: genus-minimising iff one value is
    alpha(k - k^2) and the other k-1 are alpha k."""
    zd = z_decompose(k, q)
    t = Triple(k * k, zd.q, k)
    flat = zd.flat()
    vals = tuple(v_pair(t, flat[r], flat[(r + 1) % k]) for r in range(k))
    alpha = zd.params.alpha
    big = [r for r, x in enumerate(vals) if x == alpha * (k - k * k)]
    rest_ok = sum(1 for x in vals if x == alpha * k) == k - 1
    ok = len(big) == 1 and rest_ok
    if sum(vals) != 0:
        raise InvariantError("consecutive v values do not telescope to 0")
    if any(rep(x - alpha * k, k * k) for x in vals):
        raise InvariantError("consecutive v not congruent to alpha k")
    return SpectrumResult(big[0] if ok else None, ok, vals)


# --- structural diagnostics ----------------------------------------------

@dataclass
class StructureChecks:
    """Outcome of the structural checks for one positive-type q."""
    k: int
    q: int
    genus_minimizing: bool
    strict: bool
    spectrum_ok: bool = True
    activity_ok: bool = True
    mirror_ok: bool = True
    unique_star_ok: bool = True
    neutral_complementary_ok: bool = True
    mobile_nonneutralized_ok: bool = True
    psi_gap_ok: bool = True
    step_bound_ok: bool = True
    difference_ok: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_structure(k: int, q: int) -> StructureChecks:
    """Run every structural check for a positive-type q.

    Checks that rely on genus-minimisation are only recorded as failures
    when q is genus-minimising; the k > 100 ones only when k > STRICT_K.
    """
    zd = z_decompose(k, q)
    ps = zd.params
    N = zd.modulus
    t = Triple(N, zd.q, k)
    gm = is_genus_minimizing(t)
    res = StructureChecks(k, zd.q, gm, k > STRICT_K)
    report = mobile_report(zd)

    def flag(name, ok, always=False):
        setattr(res, name, ok)
        if not ok and (always or (gm and res.strict)):
            res.failures.append(name)

    flag("difference_ok", difference_formula_holds(zd), always=True)
    flag("activity_ok", all(m.activity_ok for m in report.all_points()), always=True)
    flag("neutral_complementary_ok", all(p.complementary for p in report.neutralized_pairs),
         always=True)

    keys = {(m.kind, m.window, m.i, m.l) for m in report.mobile}
    mirror = all(
        (("L", "zn", m.i, m.l) in keys) if (m.kind, m.window) == ("R", "z0") else
        (("L", "z0", m.i, m.l) in keys) if (m.kind, m.window) == ("R", "zn") else True
        for m in report.mobile
    ) and all(
        (("R", "z0", m.i, m.l) in keys) if (m.kind, m.window) == ("L", "zn") else
        (("R", "zn", m.i, m.l) in keys)
        for m in report.mobile if m.kind == "L"
    )
    flag("mirror_ok", mirror, always=True)

    spectrum = consecutive_v_check(k, zd.q)
    if gm:
        flag("spectrum_ok", spectrum.spectrum_ok, always=True)
    elif spectrum.spectrum_ok:
        res.spectrum_ok = False
        res.failures.append("spectrum_ok")

    if gm:
        star = ps.alpha * (k - N)
        n = zd.n_lengths
        uniq = True
        for i in {(m.window, m.i) for m in report.mobile}:
            window, ii = i
            if window == "z0":
                hits = [j for j in range(zd.d)
                        if v_pair(t, zd.at(j, ii), zd.at(j, ii + 1)) == star]
            else:
                hits = [j for j in range(zd.d)
                        if v_pair(t, zd.at(j, n[j] - ii - 1), zd.at(j, n[j] - ii)) == star]
            uniq &= len(hits) == 1
        flag("unique_star_ok", uniq)
        flag("mobile_nonneutralized_ok",
             not any(is_neutralized(report, m) for m in report.mobile))
        if (ps.mu, ps.gamma) == (1, 1):
            gaps = {v_pair(t, zd.last(j - 1), zd.at(j, 0)) for j in range(zd.d)}
            flag("psi_gap_ok", gaps == {ps.alpha * k})
        flag("step_bound_ok", (k // zd.d) * zd.dq < N)
    return res
