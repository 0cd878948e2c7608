"""Parameterisation of a unit q mod k^2 by (d, xi, alpha, c, gamma, mu, m).

The parameters satisfy

    [d xi q]_{k^2} = (mu m + gamma c) k + alpha < k^2 / 2
    xi q = alpha gamma mu ((c k + alpha gamma) / d) (m k + alpha mu)   (mod k^2)

and sort q into type 0 (q = +-1 mod k), positive type (q = xi q) or
negative type (q = -xi q).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .errors import InvariantError, UsageError
from .modmath import inv, rep, sigma


class QType(str, Enum):
    TYPE0 = "Type0"
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


@dataclass(frozen=True)
class ParamSet:
    k: int
    q: int
    d: int
    xi: int
    alpha: int
    c: int
    gamma: int
    mu: int
    m: int
    q_type: QType

    @property
    def dq(self) -> int:
        """``[d xi q]_{k^2}``, the step between consecutive z-points."""
        return rep(self.d * self.xi * self.q, self.k * self.k)

    @property
    def cofactor(self) -> int:
        """``(c k + alpha gamma) / d``."""
        return (self.c * self.k + self.alpha * self.gamma) // self.d

    def reconstruct(self) -> int:
        """``alpha gamma mu cofactor (m k + alpha mu)`` reduced mod k^2."""
        a, g, u, k = self.alpha, self.gamma, self.mu, self.k
        return rep(a * g * u * self.cofactor * (self.m * k + a * u), k * k)


def derive_params(k: int, q: int) -> ParamSet:
    """Compute the parameter set of a unit ``q`` mod ``k^2`` (needs k > 2)."""
    if k <= 2:
        raise UsageError(f"parameters need k > 2, got {k}")
    N = k * k
    if gcd(q, N) != 1:
        raise UsageError(f"q={q} is not a unit mod {N}")
    q = rep(q, N)

    qinv = inv(q, k)
    d = min(qinv, rep(-qinv, k))
    xi = 1 if 2 * rep(d * q, N) < N else -1
    alpha = sigma(k, d * q) * xi
    if d == 1:
        c = 0
    else:
        kinv = inv(k, d)
        c = min(kinv, rep(-kinv, d))
    gamma = sigma(d, -c * k) * alpha
    dxq = rep(d * xi * q, N)
    m_prime = rep((dxq - alpha) // k, k) - gamma * c
    mu = 1 if m_prime >= 0 else -1
    m = rep(mu * m_prime, k)

    if c == 0:
        q_type = QType.TYPE0
    elif rep(xi * q, N) == q:
        q_type = QType.POSITIVE
    else:
        q_type = QType.NEGATIVE

    ps = ParamSet(k, q, d, xi, alpha, c, gamma, mu, m, q_type)
    check_params(ps)
    return ps


def check_params(ps: ParamSet) -> None:
    """Assert the identities and ranges every parameter set must satisfy."""
    k, N = ps.k, ps.k * ps.k
    d, c, m = ps.d, ps.c, ps.m

    def fail(msg):
        raise InvariantError(f"{msg} for k={k}, q={ps.q}: {ps}")

    if (c == 0) != (d == 1) or (d == 1) != (ps.q_type is QType.TYPE0):
        fail("type-0 equivalences broken")
    if (c * k + ps.alpha * ps.gamma) % d:
        fail("d does not divide c k + alpha gamma")
    if ps.dq != (ps.mu * m + ps.gamma * c) * k + ps.alpha or 2 * ps.dq >= N:
        fail("[d xi q] has the wrong shape")
    if ps.reconstruct() != rep(ps.xi * ps.q, N):
        fail("reconstruction mismatch")
    if (ps.mu, ps.gamma) == (-1, -1):
        fail("(mu, gamma) = (-1, -1)")
    if ps.q_type is QType.TYPE0:
        return
    if not 2 <= d < k / 2 or (ps.alpha * ps.gamma == 1 and d < 3):
        fail("d out of range")
    if d == 2 and c != 1 or d > 2 and not 1 <= c < d / 2:
        fail("c out of range")
    if not 2 <= ps.cofactor < k / 2:
        fail("cofactor out of range")
    mg = (ps.mu, ps.gamma)
    if mg == (1, 1):
        ok = 0 <= m <= k / 2 - c
    elif mg == (1, -1):
        ok = c <= m <= k / 2 + c
    else:
        ok = 0 < m <= c
    if not ok:
        fail("m out of range")


def sharpened_ranges_hold(ps: ParamSet) -> bool:
    """The tighter ranges that genus-minimising q of nonzero type obey."""
    k, c, m = ps.k, ps.c, ps.m
    mg = (ps.mu, ps.gamma)
    if mg == (1, 1):
        return 1 <= m <= k / 2 - c
    if mg == (1, -1):
        return 1 <= c < m <= k / 2 + c
    return 1 <= m < c < k / 4
