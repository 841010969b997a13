from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bubblecert.bubble_classifier import (
    PellClass,
    area_infimum_sq,
    b2_2_table,
    classify_b2_1,
    classify_b2_2,
    exclusion_verdict,
    pell_solutions,
    tail_bound,
)
from bubblecert.errors import IntervalError
from bubblecert.exact_core import PiSquared

from oracles import area_sq, grid_min, pell_bruteforce


# ---- topology classification

@pytest.mark.parametrize("budget,expected", [
    (16, {1, 2, 3, 4, 5}),
    (8, {2, 3}),
    (0, set()),
    (Fraction(72, 5), {1, 2, 3, 4}),      # strict: k = 5 sits exactly on the budget
])
def test_classify_b2_1(budget, expected):
    assert classify_b2_1(PiSquared(budget)) == expected


def test_classify_b2_1_non_strict_boundary():
    assert classify_b2_1(PiSquared(Fraction(72, 5)), strict=False) == {1, 2, 3, 4, 5}


def test_classify_b2_1_larger_budget():
    # budget 20 * 32/4 - 56 = 104
    assert classify_b2_1(PiSquared(104)) == frozenset(range(1, 17))


def test_classify_b2_2():
    assert classify_b2_2(PiSquared(24)) == {2}
    assert classify_b2_2(PiSquared(24), k_max=2) == {2}


def test_b2_2_rows_flag_negative_implied_ric0():
    rows = b2_2_table(PiSquared(24), k_max=10)
    assert rows[0].k == 2 and rows[0].admitted and not rows[0].implied_ric0_negative
    for r in rows[1:]:
        assert r.eta < 0 and not r.fits_w_minus and not r.admitted


def test_b2_2_table_rejects_small_k_max():
    with pytest.raises(ValueError):
        b2_2_table(PiSquared(24), k_max=1)


# ---- Pell classes

@pytest.mark.parametrize("k,bound", [(1, 5), (2, 10), (3, 20), (4, 12), (5, 20), (7, 15)])
def test_pell_solutions_match_bruteforce(k, bound):
    got = {(c.m, c.n) for c in pell_solutions(k, bound)}
    assert got == pell_bruteforce(k, bound)


def test_pell_examples():
    assert {(c.m, c.n) for c in pell_solutions(2, 10)} == {
        (1, 2), (1, -2), (-1, 2), (-1, -2), (7, 10), (7, -10), (-7, 10), (-7, -10)}
    assert pell_solutions(3, 50) == []
    assert pell_solutions(5, 50) == []


def test_pell_class_validation():
    with pytest.raises(ValueError):
        PellClass(1, 1, 1)
    assert PellClass(1, 2, 2).negated() == PellClass(-1, -2, 2)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_tail_bound_small(k):
    assert tail_bound(k, Fraction(1, 10), 10) <= 2


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(3, 12), st.sampled_from([1, -1]),
       st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=50))
def test_classes_beyond_tail_have_area_at_least_one(k, m, sign, x):
    for c in pell_solutions(k, m):
        if abs(c.m) > tail_bound(k, Fraction(1, 10), 10):
            assert area_sq(c.m, c.n, x) >= 1


# ---- infima

def test_infimum_unit_class():
    ci = area_infimum_sq(PellClass(0, 1, 1), Fraction(1, 10), 10)
    assert ci.infimum_sq == Fraction(2, 241)
    assert ci.argmin == Fraction(1, 10) and ci.attained and ci.exact


@pytest.mark.parametrize("m,n,k", [(0, 1, 1), (2, 3, 1), (2, -3, 1), (1, 2, 2), (1, -2, 2), (0, 2, 4)])
def test_infimum_against_grid(m, n, k):
    A, B = Fraction(1, 10), Fraction(10)
    ci = area_infimum_sq(PellClass(m, n, k), A, B)
    g = grid_min(lambda x: area_sq(m, n, x), A, B, 3000)
    assert ci.infimum_sq <= g
    assert g - ci.infimum_sq < Fraction(1, 100)


def test_vanishing_point_inside():
    # (1,-3): 2m^2 - n^2 = -7, pairing 2 + (2-3)x vanishes at x = 2
    ci = area_infimum_sq(PellClass(1, -3, 7), 1, 3)
    assert ci.vanishing_point == 2 and ci.infimum_sq == 0


@settings(max_examples=50, deadline=None)
@given(st.integers(-3, 3), st.sampled_from([1, 2, 4]))
def test_sign_symmetry(m, k):
    for c in pell_solutions(k, 3):
        if c.m != m:
            continue
        a = area_infimum_sq(c, Fraction(1, 10), 10)
        b = area_infimum_sq(c.negated(), Fraction(1, 10), 10)
        assert a.infimum_sq == b.infimum_sq and a.argmin == b.argmin


# ---- verdict

def test_verdict_default_interval():
    rep = exclusion_verdict(Fraction(1, 10), 10)
    assert rep.excluded
    assert rep.global_min_sq == Fraction(2, 241)
    assert {(w.pell.m, w.pell.n, w.pell.k) for w in rep.witnesses} == {(0, 1, 1), (0, -1, 1)}
    assert all(w.argmin == Fraction(1, 10) for w in rep.witnesses)


def test_verdict_unit_interval():
    rep = exclusion_verdict(1, 2)
    assert rep.excluded and rep.global_min_sq == Fraction(2, 7)


def test_verdict_unbounded():
    rep = exclusion_verdict(Fraction(1, 10), None)
    assert not rep.excluded and rep.global_min_sq == 0
    assert {(w.pell.m, w.pell.n, w.pell.k) for w in rep.witnesses} == {(1, -2, 2), (-1, 2, 2)}
    assert all(not w.attained for w in rep.witnesses)


@pytest.mark.parametrize("A,B", [(0, 1), (-1, 2), (2, 2), (3, 1)])
def test_verdict_rejects_bad_interval(A, B):
    with pytest.raises(IntervalError):
        exclusion_verdict(A, B)


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=Fraction(1, 20), max_value=5, max_denominator=20),
       st.fractions(min_value=Fraction(1, 20), max_value=5, max_denominator=20),
       st.fractions(min_value=0, max_value=1, max_denominator=20),
       st.fractions(min_value=0, max_value=1, max_denominator=20))
def test_verdict_monotone_under_nesting(a, w, s, t):
    A, B = a, a + w
    inner_a = A + (B - A) * s * Fraction(1, 2)
    inner_b = B - (B - A) * t * Fraction(1, 2)
    if inner_b <= inner_a:
        return
    outer = exclusion_verdict(A, B)
    inner = exclusion_verdict(inner_a, inner_b)
    assert inner.global_min_sq >= outer.global_min_sq
