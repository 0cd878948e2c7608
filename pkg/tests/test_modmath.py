from math import gcd

import pytest
from hypothesis import given, strategies as st

from lensgenus.errors import NotAUnitError, UsageError
from lensgenus.modmath import Residue, inv, rep, sigma


@pytest.mark.parametrize("x,N,expected", [(-125, 49, 22), (0, 7, 0), (90, 49, 41)])
def test_rep_examples(x, N, expected):
    assert rep(x, N) == expected


@pytest.mark.parametrize("x,N,expected", [(30, 49, 18), (1, 17, 1), (49, 79, 50)])
def test_inv_examples(x, N, expected):
    assert inv(x, N) == expected


def test_inv_non_unit_carries_gcd():
    with pytest.raises(NotAUnitError) as info:
        inv(21, 49)
    assert info.value.gcd == 7


def test_bad_modulus():
    with pytest.raises(UsageError):
        rep(3, 1)


@pytest.mark.parametrize("n,s,expected", [(7, 6, -1), (7, 8, 1), (2, 1, -1), (1, 0, 1)])
def test_sigma(n, s, expected):
    assert sigma(n, s) == expected


def test_sigma_rejects_other_classes():
    with pytest.raises(UsageError):
        sigma(7, 3)


@given(st.integers(-10**12, 10**12), st.integers(2, 10**6))
def test_rep_is_congruent_and_reduced(x, N):
    r = rep(x, N)
    assert 0 <= r < N
    assert (r - x) % N == 0


@given(st.integers(2, 10**6), st.integers(-10**9, 10**9))
def test_inv_involution(N, x):
    if gcd(x, N) != 1:
        with pytest.raises(NotAUnitError):
            inv(x, N)
        return
    assert inv(inv(x, N), N) == rep(x, N)
    assert rep(x * inv(x, N), N) == 1


def test_residue():
    assert int(Residue.of(-1, 5)) == 4
    with pytest.raises(UsageError):
        Residue(5, 5)
