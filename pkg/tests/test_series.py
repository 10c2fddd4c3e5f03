import random
from fractions import Fraction

import pytest

from chromalg.errors import LeadingCoefficientNotUnit, NonzeroConstantTerm
from chromalg.rings import GradedRingSpec
from chromalg.scalars import FP, QQ, ZP
from chromalg.series import TruncSeries


def qring():
    return GradedRingSpec(QQ, [])


def series1(ring, coeffs, D):
    return TruncSeries(ring, 1, D, {(k,): c for k, c in coeffs.items()})


def test_compose_identity():
    R = qring()
    t = TruncSeries.variable(R, 1, 8)
    g = series1(R, {1: 2, 3: 5}, 8)
    assert t.compose(g) == g


def test_compose_direct_expansion():
    # (t + t^2) o (t + t^2) = t + 2t^2 + 2t^3 + t^4
    R = qring()
    f = series1(R, {1: 1, 2: 1}, 8)
    assert f.compose(f) == series1(R, {1: 1, 2: 2, 3: 2, 4: 1}, 8)


def test_compose_truncation_contract():
    R = qring()
    f = series1(R, {1: 1, 3: 1}, 2)  # t^3 dropped at construction
    t = TruncSeries.variable(R, 1, 2)
    assert f.compose(t) == t


def test_compose_requires_zero_constant():
    R = qring()
    f = series1(R, {1: 1}, 4)
    with pytest.raises(NonzeroConstantTerm):
        f.compose(series1(R, {0: 1, 1: 1}, 4))


def test_reverse_examples():
    R = qring()
    t = TruncSeries.variable(R, 1, 5)
    assert t.reverse() == t
    # reverse(t + t^2) = t - t^2 + 2t^3 - 5t^4 + 14t^5 (mod t^6)
    f = series1(R, {1: 1, 2: 1}, 5)
    g = f.reverse()
    assert g == series1(R, {1: 1, 2: -1, 3: 2, 4: -5, 5: 14}, 5)
    assert f.compose(g) == t and g.compose(f) == t
    # reverse(2t) = t/2
    assert series1(R, {1: 2}, 5).reverse() == series1(R, {1: Fraction(1, 2)}, 5)


def test_reverse_needs_unit():
    R = GradedRingSpec(ZP(3), [])
    with pytest.raises(LeadingCoefficientNotUnit):
        series1(R, {1: 3}, 4).reverse()


def test_reverse_round_trip_randomized():
    rng = random.Random(2)
    R = qring()
    D = 12
    t = TruncSeries.variable(R, 1, D)
    for _ in range(100):
        coeffs = {1: rng.choice([1, -1, 2, Fraction(1, 3)])}
        for k in range(2, D + 1):
            if rng.random() < 0.4:
                coeffs[k] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        f = series1(R, coeffs, D)
        g = f.reverse()
        assert f.compose(g) == t
        assert g.compose(f) == t


def test_substitute_two_variables():
    R = qring()
    F = TruncSeries(R, 2, 6, {(1, 0): 1, (0, 1): 1, (1, 1): 1})  # x + y + xy
    t = TruncSeries.variable(R, 1, 6)
    # F(t, t) = 2t + t^2
    assert F.substitute([t, t]) == series1(R, {1: 2, 2: 1}, 6)
    # F(x, 0) = x for the additive part
    t2 = series1(R, {2: 1}, 6)
    t3 = series1(R, {3: 1}, 6)
    G = TruncSeries(R, 2, 6, {(1, 0): 1, (0, 1): 1})
    assert G.substitute([t2, t3]) == series1(R, {2: 1, 3: 1}, 6)


def test_truncation_coherence():
    rng = random.Random(3)
    R = qring()
    for _ in range(25):
        D = 8
        a = series1(R, {k: rng.randint(-3, 3) for k in range(1, D + 1)}, D)
        b = series1(R, {k: rng.randint(-3, 3) for k in range(1, D + 1)}, D)
        for d in (3, 5):
            assert (a * b).truncate(d) == a.truncate(d) * b.truncate(d)
            assert (a + b).truncate(d) == a.truncate(d) + b.truncate(d)
            assert a.compose(b).truncate(d) == a.truncate(d).compose(b.truncate(d))


def test_reciprocal():
    R = qring()
    f = series1(R, {0: 1, 1: 1}, 6)  # 1 + t
    g = f.reciprocal()
    assert (f * g) == series1(R, {0: 1}, 6)
    assert g == series1(R, {k: (-1) ** k for k in range(7)}, 6)


def test_derivative_and_integrate():
    R = qring()
    f = series1(R, {1: 1, 3: 2}, 6)
    assert f.derivative() == series1(R, {0: 1, 2: 6}, 5)
    assert f.integrate() == series1(R, {2: Fraction(1, 2), 4: Fraction(1, 2)}, 7)


def test_mod_p_series_arithmetic():
    R = GradedRingSpec(FP(3), [])
    f = series1(R, {1: 1, 2: 1}, 9)
    g = f.reverse()
    t = TruncSeries.variable(R, 1, 9)
    assert f.compose(g) == t


def test_internal_degree_bookkeeping():
    # over Q[m1] with deg m1 = 1, the series m1*t^2 + t is homogeneous of degree -1
    R = GradedRingSpec(QQ, [("m1", 1)])
    s = TruncSeries(R, 1, 4, {(1,): R.one(), (2,): R.gen("m1")})
    assert s.internal_degrees() == {-1}
