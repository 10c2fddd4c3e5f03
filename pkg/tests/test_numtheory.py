from fractions import Fraction

import pytest

from chromalg.numtheory import (
    bernoulli,
    expected_ext1_order,
    von_staudt_denominator,
    zeta_denominator,
)


def test_bernoulli_small():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)


def test_odd_bernoulli_vanish():
    assert all(bernoulli(k) == 0 for k in range(3, 31, 2))


def test_zeta_denominators():
    assert zeta_denominator(2) == 12   # zeta(-1) = -1/12
    assert zeta_denominator(3) == 1    # zeta(-2) = 0
    assert zeta_denominator(4) == 120  # zeta(-3) = 1/120


def test_zeta_odd_is_one():
    assert all(zeta_denominator(k) == 1 for k in range(3, 31, 2))


def test_von_staudt_examples():
    assert von_staudt_denominator(2) == 6
    assert von_staudt_denominator(4) == 30
    assert von_staudt_denominator(12) == 2730


def test_von_staudt_matches_bernoulli_denominator():
    for k in range(2, 31, 2):
        assert bernoulli(k).denominator == von_staudt_denominator(k)


def test_expected_ext1_order():
    assert expected_ext1_order(3, 2) == 3    # 24 = 2^3 * 3
    assert expected_ext1_order(3, 6) == 9    # 1008 = 2^4 * 3^2 * 7
    assert expected_ext1_order(5, 2) == 1


def test_expected_order_trivial_when_p_minus_one_does_not_divide():
    for p in (3, 5, 7, 11, 13):
        for k in range(2, 31):
            if k % (p - 1) != 0:
                assert expected_ext1_order(p, k) == 1


def test_validation():
    with pytest.raises(ValueError):
        zeta_denominator(1)
    with pytest.raises(ValueError):
        von_staudt_denominator(3)
