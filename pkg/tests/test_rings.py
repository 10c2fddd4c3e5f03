import random
from fractions import Fraction

import pytest

from chromalg.errors import (
    DegreeMismatch,
    ImageOfInvertedNotUnit,
    InputError,
    RingMismatch,
    UnsupportedPresentation,
)
from chromalg.rings import GradedRingSpec, Poly, format_poly, parse_poly, poly_map
from chromalg.scalars import FP, QQ, ZP, ZZ


def bp_ring(p=3, n_gens=2):
    gens = [(f"v{i}", p**i - 1) for i in range(1, n_gens + 1)]
    return GradedRingSpec(ZP(p), gens)


def test_square_of_sum():
    R = GradedRingSpec(QQ, [("x", 1), ("y", 1)])
    x, y = R.gen("x"), R.gen("y")
    assert (x + y) * (x + y) == x * x + 2 * x * y + y * y


def test_laurent_unit_cancels():
    R = GradedRingSpec(ZP(5), [("v1", 4)], inverted=["v1"])
    v = R.gen("v1")
    assert v * R.gen("v1", -1) == R.one()


def test_unit_recognition_plocal():
    R = GradedRingSpec(ZP(5), [("v1", 4)], inverted=["v1"])
    v = R.gen("v1")
    assert (2 * v).is_unit()  # 2 is a unit of Z_(5)
    assert not (5 * v).is_unit()
    assert (2 * v).unit_inverse() * (2 * v) == R.one()


def test_quotient_normal_form_char_p():
    R = GradedRingSpec(ZP(3), [("v1", 2)], relations=["3"])
    v = R.gen("v1")
    assert (3 * v).is_zero()
    assert R.characteristic == 3


def test_rewrite_relation():
    # v2 = v1^2 makes v2 disappear from normal forms
    R = GradedRingSpec(QQ, [("v1", 1), ("v2", 2)], relations=["v2 - v1^2"])
    v2 = R.gen("v2")
    assert v2 == R.gen("v1") ** 2


def test_kill_relation():
    R = GradedRingSpec(ZP(3), [("v1", 2), ("v2", 8)], relations=["v2"])
    assert R.gen("v2").is_zero()
    assert not R.gen("v1").is_zero()


def test_zero_ring_detection():
    R = GradedRingSpec(ZP(3), [("v1", 4)], relations=["2"])
    assert R.is_zero_ring
    assert R.gen("v1").is_zero()
    R2 = GradedRingSpec(ZP(3), [("u", 1)], relations=["u"], inverted=["u"])
    assert R2.is_zero_ring


def test_non_triangular_relation_rejected():
    with pytest.raises(UnsupportedPresentation):
        GradedRingSpec(QQ, [("x", 1), ("y", 1)], relations=["x^2 - y^2"])


def test_ring_mismatch():
    R1 = GradedRingSpec(QQ, [("x", 1)])
    R2 = GradedRingSpec(QQ, [("y", 1)])
    with pytest.raises(RingMismatch):
        R1.gen("x") + R2.gen("y")


def test_parse_and_format_round_trip():
    R = bp_ring()
    for s in ["v1", "3*v1^2 - v2", "1/2*v1*v2 + v1^5", "-v1 + 2"]:
        p = parse_poly(R, s)
        assert parse_poly(R, format_poly(p)) == p


def test_parse_rejects_garbage():
    R = bp_ring()
    with pytest.raises(InputError):
        parse_poly(R, "v1 +")
    with pytest.raises(InputError):
        parse_poly(R, "w3")
    with pytest.raises(InputError):
        parse_poly(R, "v1^-1")  # not inverted


def test_poly_map_monomial_image():
    # v1 -> u^(p-1) under BP_* -> Z_(p)[u^{+-1}]
    p = 3
    BP = bp_ring(p)
    K = GradedRingSpec(ZP(p), [("u", 1)], inverted=["u"])
    images = {"v1": K.gen("u", p - 1), "v2": K.zero()}
    assert poly_map(BP.gen("v1") ** 2, images, K) == K.gen("u", 2 * (p - 1))
    assert poly_map(3 * BP.gen("v2"), images, K).is_zero()


def test_poly_map_identity():
    R = bp_ring()
    images = {"v1": R.gen("v1"), "v2": R.gen("v2")}
    q = parse_poly(R, "3*v1^4 + v2")
    assert poly_map(q, images, R) == q


def test_poly_map_degree_check():
    BP = bp_ring()
    K = GradedRingSpec(ZP(3), [("u", 1)], inverted=["u"])
    with pytest.raises(DegreeMismatch):
        poly_map(BP.gen("v1"), {"v1": K.gen("u"), "v2": K.zero()}, K)


def test_poly_map_inverted_needs_unit():
    E = GradedRingSpec(ZP(3), [("v1", 2)], inverted=["v1"])
    BP = bp_ring()
    with pytest.raises(ImageOfInvertedNotUnit):
        poly_map(E.gen("v1", -1), {"v1": BP.gen("v1")}, BP)


def test_homogeneous_product_degree():
    R = bp_ring()
    a = parse_poly(R, "v1^4")  # degree 8
    b = parse_poly(R, "v2")    # degree 8
    assert (a * b).degree() == 16
    assert (a + b).degree() == 8


def test_normal_form_canonical_random_orders():
    R = GradedRingSpec(ZP(3), [("v1", 2), ("v2", 8)], relations=["3"])
    rng = random.Random(5)
    monos = [R.gen("v1"), R.gen("v2"), R.gen("v1") ** 3, R.const(2), R.gen("v1") * R.gen("v2")]
    for _ in range(30):
        sample = [rng.choice(monos) for _ in range(6)]
        total1 = R.zero()
        for q in sample:
            total1 = total1 + q
        rng.shuffle(sample)
        total2 = R.zero()
        for q in sample:
            total2 = total2 + q
        assert total1 == total2 and total1.terms == total2.terms


def test_graded_piece_polynomial():
    R = bp_ring(3)  # v1 deg 2, v2 deg 8
    piece = R.graded_piece(8)
    # v1^4 and v2
    assert piece == sorted([(4, 0), (0, 1)])
    assert R.graded_piece(3) == []


def test_graded_piece_laurent():
    K = GradedRingSpec(ZP(3), [("u", 1)], inverted=["u"])
    assert K.graded_piece(-2) == [(-2,)]
    E2 = GradedRingSpec(ZP(3), [("v1", 2), ("v2", 8)], inverted=["v2"])
    assert E2.graded_piece(0) is None  # infinite rank piece


def test_min_p_valuation():
    R = bp_ring()
    q = parse_poly(R, "9*v1 + 3*v2")
    assert q.min_p_valuation(3) == 1
    assert R.zero().min_p_valuation(3) == float("inf")
