from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lensgenus.classify import gm_q_set
from lensgenus.errors import UsageError
from lensgenus.modmath import rep
from lensgenus.params import QType, derive_params
from lensgenus.structure import (check_structure, consecutive_v_check,
                                 difference_formula_holds, mobile_report, theta,
                                 theta_row, xi_sum, xi_table, z_decompose)


@st.composite
def d_eps(draw, d_max=300):
    d = draw(st.integers(2, d_max))
    eps = draw(st.integers(1, d - 1).filter(lambda e: gcd(e, d) == 1))
    return d, eps


def positive_q(k):
    return [q for q in range(1, k * k) if gcd(q, k) == 1
            and derive_params(k, q).q_type is QType.POSITIVE]


def test_theta_examples():
    assert [theta(3, 1, j) for j in range(3)] == [0, 0, 1]
    assert theta(5, 2, 1) == 0


@pytest.mark.parametrize("args", [(1, 1, 0), (6, 2, 0), (5, 5, 0), (5, 0, 0)])
def test_theta_preconditions(args):
    with pytest.raises(UsageError):
        theta(*args)


@given(d_eps())
def test_theta_sums_to_eps(de):
    d, eps = de
    row = theta_row(d, eps)
    assert row.sum() == eps
    assert list(row) == [theta(d, eps, j) for j in range(d)]


@given(d_eps(d_max=120))
def test_xi_values_and_counts(de):
    d, eps = de
    table = xi_table(d, eps)
    assert (table[0] == 0).all()
    for l in range(1, d):
        a = (l * eps) % d
        vals, counts = np.unique(table[l], return_counts=True)
        assert dict(zip(vals.tolist(), counts.tolist())) == {a: d - a, a - d: a}


@given(d_eps(d_max=50), st.integers(-100, 100), st.integers(-100, 100))
def test_xi_sum_lift_independent(de, l, j):
    d, eps = de
    assert xi_sum(d, eps, l, j) == xi_sum(d, eps, l + 3 * d, j - d) == int(xi_table(d, eps)[l % d, j % d])


def test_decompose_example():
    zd = z_decompose(7, 19)
    assert (zd.d, zd.eps_d, zd.n_lengths, zd.psi, zd.psibar) == (3, 2, (2, 1, 1), 22, 27)
    assert rep(zd.at(0, 1) - zd.at(0, 0), 49) == 8
    assert sum(n + 1 for n in zd.n_lengths) == 7


def test_decompose_rejects_other_types():
    with pytest.raises(UsageError):
        z_decompose(7, 30)
    with pytest.raises(UsageError):
        z_decompose(7, 8)


@pytest.mark.parametrize("k", [7, 11, 16, 23])
def test_decomposition_invariants(k):
    N = k * k
    for q in positive_q(k):
        zd = z_decompose(k, q)
        assert sorted(zd.flat()) == sorted((a * q) % N for a in range(k))
        assert zd.flat() == [rep(rep(r * zd.d, k) * q, N) for r in range(k)]
        assert difference_formula_holds(zd)


@pytest.mark.parametrize("k", [9, 13, 20, 31])
def test_spectrum_iff_genus_minimizing(k):
    gm = gm_q_set(k)
    for q in positive_q(k):
        res = consecutive_v_check(k, q)
        assert res.spectrum_ok == (q in gm)
        assert sum(res.values) == 0


@pytest.mark.parametrize("k", [13, 22, 37])
def test_mobile_reports(k):
    for q in positive_q(k)[::5]:
        rep_ = mobile_report(z_decompose(k, q))
        for m in rep_.all_points():
            assert m.activity_ok
            assert 0 < len(m.active_times) < z_decompose(k, q).d
        for pair in rep_.neutralized_pairs:
            assert pair.complementary


@pytest.mark.parametrize("k", [101, 113, 128])
def test_strict_structure_above_100(k):
    qs = [q for q in sorted(gm_q_set(k)) if derive_params(k, q).q_type is QType.POSITIVE]
    assert qs
    for q in qs:
        chk = check_structure(k, q)
        assert chk.strict and chk.genus_minimizing
        assert chk.ok, chk.failures
