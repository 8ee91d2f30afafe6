from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from germcalc.errors import BadParameters, GlueMismatch, NotApplicable
from germcalc.germs import CyclicQuotientGerm
from germcalc.residue import (CHAIN_GLUE_RESTRICTION_TWISTS,
                              dihedral_image_twist, find_failure_m,
                              glued_mcartier, glued_restriction_coeff,
                              multibranch_deficit, single_branch_report)

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def test_single_branch_smooth_case():
    rep = single_branch_report(1, CyclicQuotientGerm(1, 1, 1, 0))
    assert (rep.source_exponent, rep.target_exponent) == (1, 0)
    assert rep.surjective


def test_single_branch_order_three():
    rep = single_branch_report(2, CyclicQuotientGerm(3, 1, 1, HALF))
    assert (rep.source_exponent, rep.target_exponent) == (1, 1)
    assert rep.surjective


def test_single_branch_order_two():
    rep = single_branch_report(5, CyclicQuotientGerm(2, 1, 1, HALF))
    assert (rep.source_exponent, rep.target_exponent) == (2, 3)
    assert rep.surjective and rep.deficit == 0


def test_single_branch_needs_conductor():
    with pytest.raises(NotApplicable):
        single_branch_report(1, CyclicQuotientGerm(2, 1, HALF, 0))


@given(st.integers(1, 400), st.integers(1, 8), st.data())
def test_single_branch_always_surjective(m, n, data):
    side = data.draw(st.fractions(min_value=0, max_value=Fraction(11, 12),
                                  max_denominator=12))
    q = data.draw(st.sampled_from(
        [q for q in range(1, n + 1) if (q < n or n == 1) and gcd(n, q) == 1]))
    assert single_branch_report(m, CyclicQuotientGerm(n, q, 1, side)).surjective


@pytest.mark.parametrize("m, coeffs, expected", [
    (6, [HALF, THIRD], 0),
    (5, [HALF, THIRD], 1),
    (7, [HALF], 0),
])
def test_multibranch_deficit_examples(m, coeffs, expected):
    assert multibranch_deficit(m, coeffs) == expected


@given(st.integers(1, 200),
       st.lists(st.fractions(min_value=Fraction(1, 12),
                             max_value=Fraction(11, 12), max_denominator=12),
                min_size=1, max_size=4))
def test_deficit_nonnegative(m, coeffs):
    assert multibranch_deficit(m, coeffs) >= 0


@given(st.integers(1, 500),
       st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20),
                    max_denominator=20))
def test_single_coefficient_deficit_vanishes(m, c):
    assert multibranch_deficit(m, [c]) == 0


@pytest.mark.parametrize("coeffs, expected", [
    ([HALF, HALF], 1),
    ([HALF, THIRD], 5),
    ([Fraction(2, 3)] * 3, 1),
])
def test_find_failure_m_examples(coeffs, expected):
    assert find_failure_m(coeffs) == expected


def test_find_failure_m_is_minimal():
    coeffs = [HALF, THIRD]
    m = find_failure_m(coeffs)
    assert all(multibranch_deficit(k, coeffs) == 0 for k in range(1, m))
    assert multibranch_deficit(m, coeffs) > 0


def test_find_failure_m_rejects_bad_input():
    with pytest.raises(BadParameters):
        find_failure_m([HALF])
    with pytest.raises(BadParameters):
        find_failure_m([HALF, Fraction(3, 2)])
    with pytest.raises(BadParameters):
        multibranch_deficit(0, [HALF])


@pytest.mark.parametrize("m, expected", [(1, 0), (2, 2), (3, 2)])
def test_dihedral_image_twist_examples(m, expected):
    assert dihedral_image_twist(m) == expected


def test_dihedral_image_twist_parity():
    for m in range(1, 101):
        t = dihedral_image_twist(m)
        assert t % 2 == 0
        assert t == m - (m % 2)


@pytest.mark.parametrize("m, n, c, expected", [
    (2, 2, Fraction(1, 4), Fraction(3, 2)),
    (2, 4, Fraction(1, 4), Fraction(7, 4)),
    (1, 1, HALF, Fraction(0)),
])
def test_glued_restriction_coeff_examples(m, n, c, expected):
    assert glued_restriction_coeff(m, n, c) == expected


def test_glued_restriction_two_is_two_minus_one_over_n():
    for n in range(1, 13):
        for c in (Fraction(1, 5), Fraction(1, 3), Fraction(5, 11)):
            assert glued_restriction_coeff(2, n, c) == 2 - Fraction(1, n)


def test_glued_restriction_rejects_bad_coefficient():
    with pytest.raises(BadParameters):
        glued_restriction_coeff(2, 3, Fraction(0))
    with pytest.raises(BadParameters):
        glued_restriction_coeff(2, 3, Fraction(1))


def germ_1n1(n, c):
    return CyclicQuotientGerm(n, 1, 1, 1 - c)


def test_glued_mcartier_identical_germs():
    assert glued_mcartier(2, germ_1n1(2, Fraction(1, 4)), germ_1n1(2, Fraction(1, 4)))


def test_glued_mcartier_distinct_orders():
    # matched slope 1/8, orders 2 and 4: coefficients 3/2 vs 7/4
    assert not glued_mcartier(2, germ_1n1(2, Fraction(1, 4)),
                              germ_1n1(4, HALF))


def test_glued_mcartier_requires_matched_slopes():
    with pytest.raises(GlueMismatch):
        glued_mcartier(2, germ_1n1(2, Fraction(1, 4)), germ_1n1(4, Fraction(1, 8)))


def test_glued_mcartier_requires_canonical_model():
    g1 = CyclicQuotientGerm(5, 2, 1, HALF)
    with pytest.raises(GlueMismatch):
        glued_mcartier(2, g1, g1)


def test_glued_mcartier_iff_equal_orders_on_small_grid():
    for n1 in range(1, 9):
        for n2 in range(1, 9):
            gamma = Fraction(1, 2 * max(n1, n2) + 1)
            g1, g2 = germ_1n1(n1, n1 * gamma), germ_1n1(n2, n2 * gamma)
            assert glued_mcartier(2, g1, g2) == (n1 == n2)


def test_chain_glue_restriction_twists_fixture():
    assert CHAIN_GLUE_RESTRICTION_TWISTS == (0, -1, 0)
