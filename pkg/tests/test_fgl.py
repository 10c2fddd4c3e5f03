import random
from fractions import Fraction

import pytest

from chromalg.errors import TorsionBase, TruncationTooSmall
from chromalg.fgl import (
    PointedAutomorphism,
    additive_fgl,
    araki_generators,
    aut_group_op,
    fgl_mod_p,
    hazewinkel_generators,
    height,
    honda_fgl,
    is_p_typical,
    log_series,
    m_in_terms_of_v,
    multiplicative_fgl,
    p_series,
    p_typical_fgl,
    p_typify,
    specialize_fgl,
    strict_iso_apply,
    universal_fgl,
    validate_fgl,
)
from chromalg.rings import GradedRingSpec, parse_poly
from chromalg.scalars import FP, QQ, ZP
from chromalg.series import TruncSeries


def scalar_ring(domain=QQ):
    return GradedRingSpec(domain, [])


def series1(ring, coeffs, D):
    return TruncSeries(ring, 1, D, {(k,): c for k, c in coeffs.items()})


# -- validation ------------------------------------------------------------


def test_additive_and_multiplicative_valid():
    R = scalar_ring()
    assert additive_fgl(R, 6).valid
    assert multiplicative_fgl(R, 6).valid


def test_asymmetric_law_fails_commutativity():
    R = scalar_ring()
    F = TruncSeries(R, 2, 5, {(1, 0): 1, (0, 1): 1, (2, 0): 1})
    report = validate_fgl(F).report
    by_name = {c.name: c for c in report.checks}
    assert not by_name["commutativity"].ok
    assert by_name["commutativity"].witness[0] in ((2, 0), (0, 2))


# -- universal law ------------------------------------------------------------


def test_universal_fgl_axioms_and_xy_coefficient():
    U = universal_fgl(6)
    assert U.valid
    m1 = U.ring.gen("m1")
    assert U.series.coefficient((1, 1)) == -2 * m1


def test_universal_specializations():
    U = universal_fgl(6)
    zero = {name: 0 for name in U.ring.gen_names}
    assert specialize_fgl(U, zero).series == additive_fgl(scalar_ring(), 6).series
    # log(1+t): m_i = (-1)^i/(i+1) reproduces x + y + xy exactly
    alt = {f"m{i}": Fraction((-1) ** i, i + 1) for i in range(1, 6)}
    assert specialize_fgl(U, alt).series == multiplicative_fgl(scalar_ring(), 6).series
    # the all-positive specialization m_i = 1/(i+1) gives the mirror law x + y - xy
    pos = {f"m{i}": Fraction(1, i + 1) for i in range(1, 6)}
    assert specialize_fgl(U, pos).series == multiplicative_fgl(scalar_ring(), 6, sign=-1).series


# -- logarithms ------------------------------------------------------------


def test_log_additive_is_t():
    F = additive_fgl(scalar_ring(), 6)
    assert log_series(F) == series1(scalar_ring(), {1: 1}, 6)


def test_log_multiplicative():
    F = multiplicative_fgl(scalar_ring(), 4)
    expected = series1(scalar_ring(), {1: 1, 2: Fraction(-1, 2), 3: Fraction(1, 3),
                                       4: Fraction(-1, 4)}, 4)
    assert log_series(F) == expected


def test_log_linearizes():
    F = multiplicative_fgl(scalar_ring(), 8)
    ell = log_series(F)
    lx = ell.embed(2, [0])
    ly = ell.embed(2, [1])
    assert ell.substitute([F.series]) == lx + ly


def test_log_over_fp_rejected():
    F = additive_fgl(scalar_ring(FP(3)), 6)
    with pytest.raises(TorsionBase):
        log_series(F)


# -- p-series and heights ------------------------------------------------------------


def test_p_series_additive():
    F = additive_fgl(scalar_ring(), 6)
    assert p_series(F, 5) == series1(scalar_ring(), {1: 5}, 6)


def test_p_series_multiplicative():
    F = multiplicative_fgl(scalar_ring(), 6)
    assert p_series(F, 3) == series1(scalar_ring(), {1: 3, 2: 3, 3: 1}, 6)
    Fp = multiplicative_fgl(scalar_ring(FP(3)), 6)
    assert p_series(Fp, 3) == series1(scalar_ring(FP(3)), {3: 1}, 6)


def test_p_series_is_endomorphism():
    F = multiplicative_fgl(scalar_ring(FP(3)), 9)
    ps = p_series(F, 3)
    lhs = ps.substitute([F.series])
    rhs = F.series.substitute([ps.embed(2, [0]), ps.embed(2, [1])])
    assert lhs == rhs


def test_heights():
    assert height(multiplicative_fgl(scalar_ring(FP(7)), 7), 1).n == 1
    assert height(additive_fgl(scalar_ring(FP(5)), 25), 2).kind == "infinity_within_bound"
    assert height(multiplicative_fgl(scalar_ring(), 4), 1).n == 0  # char 0
    assert height(honda_fgl(3, 2), 2).n == 2


def test_height_truncation_guard():
    with pytest.raises(TruncationTooSmall):
        height(multiplicative_fgl(scalar_ring(FP(3)), 4), 2)


def test_height_invariant_under_strict_iso():
    rng = random.Random(9)
    R = scalar_ring(FP(3))
    F = multiplicative_fgl(R, 9)
    for _ in range(10):
        coeffs = {1: 1}
        for k in range(2, 9):
            if rng.random() < 0.5:
                coeffs[k] = rng.randint(0, 2)
        f = PointedAutomorphism(series1(R, coeffs, 9))
        moved = strict_iso_apply(f, F)
        assert moved.valid
        assert height(moved, 1).n == height(F, 1).n == 1


# -- generator families ------------------------------------------------------------


def test_hazewinkel_first_two():
    p = 3
    vs = hazewinkel_generators(p, 2)
    ring = vs[0].ring
    m1, m2 = ring.gen("m1"), ring.gen("m2")
    assert vs[0] == p * m1
    assert vs[1] == p * m2 - m1 * (p * m1) ** p


def test_araki_v1_and_mod_p_agreement():
    for p in (2, 3):
        ar = araki_generators(p, 3)
        hz = hazewinkel_generators(p, 3)
        ring = ar[0].ring
        m1 = ring.gen("m1")
        assert ar[0] == (p - p**p) * m1
        # rewrite both families in Hazewinkel v-coordinates and compare mod p
        ms = m_in_terms_of_v(p, 3)
        vring = ms[0].ring
        subs = {f"m{i}": ms[i - 1] for i in range(1, 4)}
        from chromalg.rings import poly_map
        for n in range(3):
            a = poly_map(ar[n], subs, vring)
            h = poly_map(hz[n], subs, vring)
            assert (a - h).min_p_valuation(p) >= 1


def test_hazewinkel_p_integrality():
    for p in (2, 3, 5):
        for v in hazewinkel_generators(p, 3):
            assert v.min_p_valuation(p) >= 0


def test_araki_empty():
    assert araki_generators(3, 0) == []


# -- p-typification ------------------------------------------------------------


def test_p_typify_idempotent_on_typical():
    F = p_typical_fgl(3, {1: 1}, 9, validate=True)
    assert F.valid
    F_typ, f = p_typify(F, 3)
    assert f.series == TruncSeries.variable(F.ring, 1, 9)
    assert F_typ.series == F.series


def test_p_typify_multiplicative():
    F = multiplicative_fgl(scalar_ring(ZP(3)), 10)
    F_typ, f = p_typify(F, 3)
    ell = F_typ.log
    assert is_p_typical(ell, 3)
    assert dict(ell.terms) == {(1,): ell.ring.one(),
                               (3,): ell.ring.const(Fraction(1, 3)),
                               (9,): ell.ring.const(Fraction(1, 9))}
    assert f.is_strict()
    # transport identity: f(F(x,y)) = F_typ(f(x), f(y))
    fx = f.series.embed(2, [0])
    fy = f.series.embed(2, [1])
    assert f.series.substitute([F.series]) == F_typ.series.substitute([fx, fy])
    assert F_typ.valid


def test_p_typify_additive_fixed():
    F = additive_fgl(scalar_ring(ZP(3)), 8)
    F_typ, f = p_typify(F, 3)
    assert F_typ.series == F.series
    assert f.series == TruncSeries.variable(F.ring, 1, 8)


def test_honda_reduction_leading_term():
    F = honda_fgl(3, 2)
    ps = p_series(F, 3)
    assert sorted(k for (k,) in ps.terms)[0] == 9


# -- strict isomorphisms and the automorphism filtration -------------------------------


def test_strict_iso_identity_and_round_trip():
    R = scalar_ring()
    F = multiplicative_fgl(R, 8)
    ident = PointedAutomorphism(series1(R, {1: 1}, 8))
    assert strict_iso_apply(ident, F).series == F.series
    f = PointedAutomorphism(series1(R, {1: 1, 2: 1}, 8))
    moved = strict_iso_apply(f, F)
    back = strict_iso_apply(f.invert(), moved)
    assert back.series == F.series


def test_strict_iso_additive_degree2():
    R = scalar_ring()
    F = additive_fgl(R, 2)
    f = PointedAutomorphism(series1(R, {1: 1, 2: 1}, 2))
    moved = strict_iso_apply(f, F)
    assert moved.series.coefficient((1, 1)) == R.const(2)


def test_aut_ops():
    R = scalar_ring()
    f = PointedAutomorphism(series1(R, {1: 1, 3: 1}, 8))
    assert aut_group_op(f, f.invert(), "compose").series == series1(R, {1: 1}, 8)
    g = PointedAutomorphism(series1(R, {1: 1, 4: 3}, 8))
    level, value = aut_group_op(g, None, "filtration_level")
    assert level == 3 and value == R.const(3)
    h = PointedAutomorphism(series1(R, {1: 2, 2: 1}, 8))
    assert aut_group_op(h, None, "leading_coefficient") == R.const(2)


def test_filtration_value_additivity():
    rng = random.Random(4)
    R = scalar_ring()
    for _ in range(100):
        n = rng.randint(1, 4)
        D = 12
        a = Fraction(rng.randint(-5, 5))
        b = Fraction(rng.randint(-5, 5))
        fc = {1: 1, n + 1: a}
        gc = {1: 1, n + 1: b}
        for k in range(n + 2, D + 1):
            if rng.random() < 0.3:
                fc[k] = rng.randint(-3, 3)
            if rng.random() < 0.3:
                gc[k] = rng.randint(-3, 3)
        f = PointedAutomorphism(series1(R, fc, D))
        g = PointedAutomorphism(series1(R, gc, D))
        comp = f.compose(g)
        # both lie in stage n; the stage-n value adds under composition
        assert comp.series.coefficient((n + 1,)) == R.const(a + b)
