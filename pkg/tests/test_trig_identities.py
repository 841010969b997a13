from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bubblecert.errors import PoleError
from bubblecert.exact_core import FloatContext
from bubblecert.trig_identities import (
    cot2_zero_limit,
    identity_suite,
    main_identity_exact,
    main_identity_rhs,
    regrouped_sums,
    sample_points,
    scaled_tolerance,
    verify_cot2_sum,
    verify_cot2_zero_limit,
    verify_cot_sum,
    verify_main_identity,
    verify_sin_product,
)

CTX = FloatContext(113, 1e-10)


def test_sin_product_small_case():
    # k = 1: sin(2x) = 2 sin(x) sin(x + pi/2)
    rep = verify_sin_product(1, Fraction(1, 7), CTX)
    assert rep.passed and rep.residual < 1e-30


def test_cot_sum_reports_pole_indices():
    with pytest.raises(PoleError) as info:
        verify_cot_sum(3, Fraction(1, 4), CTX)
    assert info.value.indices == (3,) or list(info.value.indices) == [3]


def test_cot2_sum_rejects_multiple_of_spacing():
    with pytest.raises(PoleError):
        verify_cot2_sum(4, Fraction(2, 5), CTX)


@pytest.mark.parametrize("fn", [verify_sin_product, verify_cot_sum, verify_cot2_sum])
def test_rejects_k_zero(fn):
    with pytest.raises(ValueError):
        fn(0, Fraction(1, 3), CTX)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(1, 10 ** 6 - 1))
def test_shifted_identities_hold_away_from_poles(k, num):
    r = Fraction(num, 10 ** 6)
    off = r % Fraction(1, k + 1)
    if min(off, Fraction(1, k + 1) - off) < Fraction(1, 1000):
        return
    for fn in (verify_sin_product, verify_cot_sum, verify_cot2_sum):
        assert fn(k, r, CTX).passed


@pytest.mark.parametrize("k,expected", [(1, 0), (2, Fraction(2, 3)), (3, 2), (5, Fraction(20, 3))])
def test_cot2_zero_limit_values(k, expected):
    assert cot2_zero_limit(k, CTX) == expected
    assert verify_cot2_zero_limit(k, CTX).passed


def test_main_identity_exact_and_float():
    for k in range(2, 40):
        assert main_identity_exact(k) == main_identity_rhs(k)
        rep = verify_main_identity(k, CTX)
        assert rep.passed and rep.exact_match


def test_main_identity_k3_value():
    # sum over i=1..7 of cot(i pi/8) cot(3 i pi/8) = 2/3*27 - 18 + 2 = 2
    assert main_identity_rhs(3) == 2


def test_regrouped_sums_agree():
    for k in range(3, 12):
        for j in range(1, k - 1):
            a, b, target = regrouped_sums(k, j, CTX)
            assert a == pytest.approx(target, abs=1e-9)
            assert b == pytest.approx(target, abs=1e-9)


@pytest.mark.parametrize("k,j", [(2, 1), (5, 0), (5, 4)])
def test_regrouped_sums_range(k, j):
    with pytest.raises(ValueError):
        regrouped_sums(k, j, CTX)


def test_sample_points_are_seeded_and_guarded():
    a = sample_points(7, 20, seed=3)
    assert a == sample_points(7, 20, seed=3)
    assert a != sample_points(7, 20, seed=4)
    spacing = Fraction(1, 8)
    for r in a:
        off = r % spacing
        assert min(off, spacing - off) >= Fraction(1, 1000)


def test_tolerance_scaling():
    assert scaled_tolerance(10, CTX) == CTX.tolerance
    assert scaled_tolerance(60, CTX) == pytest.approx(2 * CTX.tolerance)


def test_suite_small():
    reps = list(identity_suite(k_max=4, samples=3, seed=1, ctx=CTX))
    assert len(reps) == 4 * 3 * 3
    assert all(r.passed for r in reps)
