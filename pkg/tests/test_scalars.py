from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chromalg.errors import DivisionByNonUnit, DomainMismatch
from chromalg.scalars import FP, INFINITY, QQ, ZP, ZZ, Scalar, p_valuation, scalar_arith


def q(domain, value):
    return Scalar.make(domain, Fraction(value))


def test_rational_add():
    assert scalar_arith(q(QQ, "1/2"), q(QQ, "1/3"), "add") == q(QQ, "5/6")


def test_plocal_product_is_exact():
    assert scalar_arith(q(ZP(3), "3/5"), q(ZP(3), 5), "mul") == q(ZP(3), 3)


def test_plocal_division_by_p_fails():
    with pytest.raises(DivisionByNonUnit):
        scalar_arith(q(ZP(3), 1), q(ZP(3), 3), "div")


def test_integer_division_requires_unit():
    assert scalar_arith(q(ZZ, 4), q(ZZ, -1), "div") == q(ZZ, -4)
    with pytest.raises(DivisionByNonUnit):
        scalar_arith(q(ZZ, 4), q(ZZ, 2), "div")


def test_prime_field_reduction_and_inverse():
    a = q(FP(7), 10)
    assert a == q(FP(7), 3)
    assert scalar_arith(q(FP(7), 1), q(FP(7), 3), "div") == q(FP(7), 5)


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        scalar_arith(q(QQ, 1), q(ZZ, 1), "add")


def test_plocal_membership():
    with pytest.raises(DivisionByNonUnit):
        Scalar.make(ZP(3), Fraction(1, 3))


def test_p_valuation_examples():
    assert p_valuation(q(QQ, "18/5"), 3) == 2
    assert p_valuation(q(QQ, 0), 5) == INFINITY
    # independent oracle: repeated division by 2
    n, v = 240, 0
    while n % 2 == 0:
        n //= 2
        v += 1
    assert p_valuation(q(ZZ, 240), 2) == v == 4


def test_p_valuation_negative_on_denominator():
    assert p_valuation(q(QQ, "5/9"), 3) == -2


fracs = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(fracs, fracs, fracs)
def test_rational_ring_axioms(a, b, c):
    A, B, C = (q(QQ, x) for x in (a, b, c))
    assert (A + B) + C == A + (B + C)
    assert A + B == B + A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_prime_field_ring_axioms(a, b, c):
    p = 13
    A, B, C = (q(FP(p), x % p) for x in (a, b, c))
    assert (A + B) + C == A + (B + C)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
