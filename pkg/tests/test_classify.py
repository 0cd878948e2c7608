from math import gcd

import pytest
from hypothesis import given, strategies as st

from lensgenus.classify import (conjecture_check, gm_q_set, kinv2_triple,
                                match_families, reduce_p, vbar_bridge)
from lensgenus.errors import OutOfScopeError, UsageError
from lensgenus.invariants import Triple, is_genus_minimizing
from lensgenus.modmath import inv


def test_gm_q_set_k5():
    assert sorted(gm_q_set(5)) == [4, 6, 7, 9, 11, 14, 16, 18, 19, 21]


@pytest.mark.parametrize("k", range(2, 31))
def test_forms_match_brute_force(k):
    N = k * k
    brute = {q for q in range(1, N) if gcd(q, k) == 1 and is_genus_minimizing(Triple(N, q, k))}
    assert gm_q_set(k) == brute


@pytest.mark.parametrize("k", range(2, 60, 7))
def test_gm_q_set_closed_under_inverse(k):
    N = k * k
    s = gm_q_set(k)
    assert all(gcd(x, N) == 1 for x in s)
    assert {inv(x, N) for x in s} == s


def test_gm_q_set_rejects_small_k():
    with pytest.raises(UsageError):
        gm_q_set(1)


def test_match_families_examples():
    toks = [m.token() for m in match_families(79, 7)]
    assert "III+2" in toks
    assert not match_families(50, 7)
    assert "I_II+1" in [m.token() for m in match_families(7 * 7 + 7 + 1, 7)]


def test_match_families_non_coprime_flag():
    rep = match_families(63, 7)
    assert not rep and not rep.coprime


@given(st.integers(2, 40), st.integers(0, 10**5))
def test_match_families_periodic(k, p):
    a = match_families(p, k)
    b = match_families(p + k * k, k)
    assert [m.as_dict() for m in a] == [m.as_dict() for m in b]


def test_reduce_p_example():
    r = reduce_p(79, 7)
    assert (r.triple.p, r.triple.q, r.triple.k) == (49, 18, 7)
    assert (r.eps_p, r.n) == (19, 3)
    assert (r.n * 79 + 1) % 7 == 0
    t = reduce_p(50, 7).triple
    assert (t.p, t.q, t.k) == (49, 1, 7)


@pytest.mark.parametrize("p,k", [(49, 7), (30, 7), (56 + 49, 7)])
def test_reduce_p_rejects(p, k):
    with pytest.raises(UsageError):
        reduce_p(p, k)


@given(st.integers(2, 30), st.data())
def test_reduction_sound(k, data):
    p = data.draw(st.integers(k * k + 1, 4 * k * k).filter(lambda x: gcd(x, k) == 1))
    assert is_genus_minimizing(kinv2_triple(p, k)) == is_genus_minimizing(reduce_p(p, k).triple)


def test_conjecture_check_examples():
    c = conjecture_check(79, 49, 7)
    assert c.eligible and c.gm and c.consistent
    c = conjecture_check(79, 3, 7)
    assert not c.congruence_ok and not c.eligible
    c = conjecture_check(50, 49, 7)
    assert c.congruence_ok and not c.families and not c.gm and c.consistent
    assert c.gbar >= 100


def test_conjecture_check_scope():
    with pytest.raises(OutOfScopeError):
        conjecture_check(40, 1, 7)
    with pytest.raises(UsageError):
        conjecture_check(63, 1, 7)


@given(st.integers(2, 20), st.data())
def test_vbar_bridge(k, data):
    p = data.draw(st.integers(k * k + 1, 3 * k * k).filter(lambda x: gcd(x, k) == 1))
    res = vbar_bridge(p, k, max_pairs=500)
    assert res.ok, res.failures
