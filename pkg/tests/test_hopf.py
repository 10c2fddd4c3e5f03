import random
from fractions import Fraction

import pytest

from chromalg.errors import NotInvariant, TruncationTooSmall
from chromalg.hopf import (
    HopfAlgebroidSpec,
    HopfMorphism,
    RingMap,
    TensorElement,
    bp_hopf_algebroid,
    check_hopf_axioms,
    integrality_report,
    invariant_ideal_check,
    induced_hopf_algebroid,
    morphism_diagnostics,
    mu_hopf_algebroid_rational,
    quotient_hopf_algebroid,
)
from chromalg.rings import GradedRingSpec, format_poly, parse_poly
from chromalg.scalars import QQ, ZP


@pytest.fixture(scope="module")
def bp3():
    return bp_hopf_algebroid(3, 16)


def test_eta_r_v1(bp3):
    v1 = bp3.A.gen("v1")
    assert bp3.eta_R(v1) == bp3.Gamma.gen("v1") + 3 * bp3.Gamma.gen("t1")


def test_delta_t1(bp3):
    d = bp3.delta_images["t1"]
    t1 = bp3.Gamma.gen("t1")
    one = bp3.Gamma.one()
    assert d == TensorElement.from_factors(bp3, [t1, one]) + \
        TensorElement.from_factors(bp3, [one, t1])


def test_eps_kills_t(bp3):
    for name in ("t1", "t2"):
        assert bp3.eps(bp3.Gamma.gen(name)).is_zero()
    assert bp3.eps(bp3.eta_R(bp3.A.gen("v2"))) == bp3.A.gen("v2")


def test_eta_r_classical_mod_p(bp3):
    # eta_R(v2) = v2 + v1 t1^3 - v1^3 t1 modulo 3
    G = bp3.Gamma
    diff = bp3.eta_R_images["v2"] - (G.gen("v2") + G.gen("v1") * G.gen("t1") ** 3
                                     - G.gen("v1") ** 3 * G.gen("t1"))
    assert diff.min_p_valuation(3) >= 1


def test_bp_axioms_pass(bp3):
    assert check_hopf_axioms(bp3).passed


def test_bp_integrality(bp3):
    assert integrality_report(bp3, 3) >= 0


def test_bp_araki_variant_passes():
    H = bp_hopf_algebroid(3, 16, generators="araki")
    assert check_hopf_axioms(H).passed
    assert integrality_report(H, 3) >= 0
    # Araki right unit also satisfies eta_R(v1) = v1 + p t1 mod higher p-filtration
    diff = H.eta_R_images["v1"] - (H.Gamma.gen("v1") + 3 * H.Gamma.gen("t1"))
    assert diff.min_p_valuation(3) >= 2


def test_truncation_guard():
    with pytest.raises(TruncationTooSmall):
        bp_hopf_algebroid(5, 3)


def test_eta_r_is_ring_map(bp3):
    rng = random.Random(1)
    gens = [bp3.A.gen("v1"), bp3.A.gen("v2"), bp3.A.const(2)]
    for _ in range(10):
        a = sum((rng.choice(gens) for _ in range(2)), bp3.A.zero())
        b = sum((rng.choice(gens) for _ in range(2)), bp3.A.zero())
        assert bp3.eta_R(a * b) == bp3.eta_R(a) * bp3.eta_R(b)


def test_corrupted_delta_fails(bp3):
    H = bp_hopf_algebroid(3, 16)
    t1 = H.Gamma.gen("t1")
    one = H.Gamma.one()
    H.delta_images["t1"] = TensorElement.from_factors(H, [t1, one])  # drop 1 (x) t1
    H._delta_mono_cache.clear()
    rep = check_hopf_axioms(H)
    assert not rep.passed
    assert any(gen == "t1" and axiom.startswith("counit") for axiom, gen, ok, _ in rep.checks
               if not ok)


def test_trivial_hopf_algebroid_passes():
    A = GradedRingSpec(ZP(3), [("v1", 2)])
    H = HopfAlgebroidSpec(A, A, {"v1": A.gen("v1")}, {}, {}, 10, label="trivial")
    assert check_hopf_axioms(H).passed


def test_mu_rational_eta_r():
    M = mu_hopf_algebroid_rational(4)
    assert M.eta_R_images["m1"] == M.Gamma.gen("m1") - M.Gamma.gen("b1")
    assert all(M.eps(M.Gamma.gen(f"b{i}")).is_zero() for i in (1, 2, 3))
    assert check_hopf_axioms(M).passed


def test_mu_rational_antipode_is_reversion():
    from chromalg.series import TruncSeries
    M = mu_hopf_algebroid_rational(3)
    G = M.Gamma
    b = TruncSeries(G, 1, 4, {(1,): G.one(), (2,): G.gen("b1"),
                              (3,): G.gen("b2"), (4,): G.gen("b3")})
    rev = b.reverse()
    for n in (1, 2, 3):
        assert M.c_images[f"b{n}"] == rev.coefficient((n + 1,))


# -- invariant ideals -----------------------------------------------------------


def test_invariant_chain(bp3):
    assert invariant_ideal_check(bp3, ["3"])[0]
    ok, details = invariant_ideal_check(bp3, ["3", "v1"])
    assert ok
    # witness for v1: eta_R(v1) - v1 = 3 t1 lies in I_2 Gamma
    v1_detail = next(d for d in details if d["generator"] == "v1")
    assert v1_detail["residue"] == "3*t1"
    assert invariant_ideal_check(bp3, ["3", "v1", "v2"])[0]


def test_v1_alone_not_invariant(bp3):
    ok, details = invariant_ideal_check(bp3, ["v1"])
    assert not ok
    assert details[0]["residue_mod_ideal"] == "3*t1"


def test_quotient_hopf_algebroid(bp3):
    Q = quotient_hopf_algebroid(bp3, ["3"])
    assert Q.Gamma.characteristic == 3
    # eta_R(v1) = v1 in the quotient
    assert Q.eta_R(Q.A.gen("v1")) == Q.a_to_gamma(Q.A.gen("v1"))
    assert check_hopf_axioms(Q).passed


def test_quotient_requires_invariance(bp3):
    with pytest.raises(NotInvariant):
        quotient_hopf_algebroid(bp3, ["v1"])


def test_quotient_zero_ideal_is_identity(bp3):
    Q = quotient_hopf_algebroid(bp3, [])
    assert Q.A == bp3.A and Q.Gamma == bp3.Gamma
    assert Q.eta_R_images == bp3.eta_R_images


# -- induced algebroids and morphisms ------------------------------------------------


def test_induced_identity(bp3):
    f0 = RingMap(bp3.A, bp3.A, {n: bp3.A.gen(n) for n in bp3.A.gen_names}, kind="identity")
    spec, mor = induced_hopf_algebroid(bp3, f0)
    assert spec is bp3
    rep = morphism_diagnostics(mor)
    assert rep["valid_morphism"]
    assert "isomorphism" in rep["beta"]


def test_induced_quotient_agrees(bp3):
    B = bp3.A.derived(extra_relations=["3", "v1"])
    f0 = RingMap(bp3.A, B, {n: B.gen(n) for n in bp3.A.gen_names}, kind="quotient")
    spec, mor = induced_hopf_algebroid(bp3, f0)
    direct = quotient_hopf_algebroid(bp3, ["3", "v1"])
    assert spec.A == direct.A and spec.Gamma == direct.Gamma
    assert spec.eta_R_images == direct.eta_R_images
    assert spec.delta_images == direct.delta_images
    rep = morphism_diagnostics(mor)
    assert rep["valid_morphism"] and "isomorphism" in rep["beta"]


def test_induced_localized_presentation(bp3):
    # E(1)-style target: v1 inverted, v2 killed
    B = GradedRingSpec(ZP(3), [("v1", 2)], inverted=["v1"])
    images = {"v1": B.gen("v1"), "v2": B.zero()}
    f0 = RingMap(bp3.A, B, images, kind="general")
    spec, mor = induced_hopf_algebroid(bp3, f0)
    assert spec.induced_opaque
    names = spec.Gamma.gen_names
    assert "t1" in names and "t2" in names and "w_v1" in names
    assert "w_v1" in spec.Gamma.inverted
    # the opaque relations list the killed right-unit image and the formal unit
    assert len(spec.Gamma.extra_relations) == 2
    rep = morphism_diagnostics(mor)
    assert rep["valid_morphism"] and "isomorphism" in rep["beta"]


def test_collapsing_t1_is_not_a_morphism(bp3):
    ident = {n: bp3.A.gen(n) for n in bp3.A.gen_names}
    f0 = RingMap(bp3.A, bp3.A, ident, kind="identity")
    gamma_images = {n: bp3.Gamma.gen(n) for n in bp3.Gamma.gen_names}
    gamma_images["t1"] = bp3.Gamma.zero()
    mor = HopfMorphism(bp3, bp3, f0, gamma_images, by_construction=False)
    rep = morphism_diagnostics(mor)
    assert not rep["valid_morphism"]
    assert any("compatibility" in f[0] for f in rep["failures"])


def test_identity_morphism_beta_iso(bp3):
    ident = {n: bp3.A.gen(n) for n in bp3.A.gen_names}
    f0 = RingMap(bp3.A, bp3.A, ident, kind="identity")
    gamma_images = {n: bp3.Gamma.gen(n) for n in bp3.Gamma.gen_names}
    mor = HopfMorphism(bp3, bp3, f0, gamma_images, by_construction=False)
    rep = morphism_diagnostics(mor, max_degree=10)
    assert rep["valid_morphism"]
    assert "isomorphism" in rep["beta"]
