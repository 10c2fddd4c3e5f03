"""Truncated flat Hopf algebroids with verified structure maps.

The two built-in families are the p-typical pair (with coideal generators
t_1, t_2, ... over the v-polynomial base) and the rational one-dimensional
model (base Q[m_1, ...], coideal generators b_1, ...). Comultiplications and
antipodes are solved degreewise from their rational defining identities and
then certified integral; the axiom checker is the oracle for the whole
construction.

Tensor products over the base are normalized by pushing base coefficients
into the leftmost factor through the right unit, which makes equality of
tensors a dictionary comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    NotInvariant,
    TruncationTooSmall,
    UnsupportedPresentation,
)
from .fgl import hazewinkel_generators, araki_generators, m_in_terms_of_v
from .rings import GradedRingSpec, Poly, format_poly, poly_map
from .scalars import INFINITY, QQ, ZP
from .series import TruncSeries


@dataclass
class HopfAlgebroidSpec:
    """(A, Gamma) with structure maps on generators, truncated at degree D.

    Gamma's generator list must start with A's generators (the left unit is
    the inclusion); the remaining generators form the coideal side.
    """

    A: GradedRingSpec
    Gamma: GradedRingSpec
    eta_R_images: dict          # A-gen name -> Poly in Gamma
    delta_images: dict          # coideal gen name -> TensorElement (2 factors)
    c_images: dict              # coideal gen name -> Poly in Gamma
    trunc: int
    label: str = ""
    induced_opaque: bool = False  # presentation carries undecidable relations

    def __post_init__(self):
        n = len(self.A.gen_names)
        if self.Gamma.gen_names[:n] != self.A.gen_names:
            raise UnsupportedPresentation("Gamma must extend A's generator list")
        self.a_indices = tuple(range(n))
        self.t_indices = tuple(range(n, len(self.Gamma.gen_names)))
        self._eta_R_mono_cache: dict = {}
        self._delta_mono_cache: dict = {}

    # -- ring plumbing ------------------------------------------------------

    @property
    def coideal_names(self):
        return tuple(self.Gamma.gen_names[i] for i in self.t_indices)

    def a_to_gamma(self, p: Poly) -> Poly:
        pad = len(self.Gamma.gen_names) - len(self.A.gen_names)
        return Poly(self.Gamma, {e + (0,) * pad: c for e, c in p.terms.items()})

    def gamma_to_a(self, p: Poly) -> Poly:
        n = len(self.A.gen_names)
        out = {}
        for e, c in p.terms.items():
            if any(e[i] for i in self.t_indices):
                raise ValueError("element has coideal part")
            out[e[:n]] = c
        return Poly(self.A, out)

    def split_exponent(self, exp):
        """(a-part, t-part) of a Gamma exponent, both as Gamma exponents."""
        a = tuple(exp[i] if i in set(self.a_indices) else 0 for i in range(len(exp)))
        t = tuple(exp[i] if i in set(self.t_indices) else 0 for i in range(len(exp)))
        return a, t

    def has_a_part(self, exp) -> bool:
        return any(exp[i] for i in self.a_indices)

    def has_t_part(self, exp) -> bool:
        return any(exp[i] for i in self.t_indices)

    # -- structure maps on polynomials ---------------------------------------

    def eta_R(self, p: Poly) -> Poly:
        """Right unit on an A-polynomial (or a Gamma-polynomial with no t part)."""
        if p.ring == self.A:
            p = self.a_to_gamma(p)
        out = self.Gamma.zero()
        for e, c in p.terms.items():
            if self.has_t_part(e):
                raise ValueError("eta_R applies to base elements")
            out = out + self.eta_R_monomial(e) * c
        return out

    def eta_R_monomial(self, a_exp) -> Poly:
        key = tuple(a_exp)
        hit = self._eta_R_mono_cache.get(key)
        if hit is not None:
            return hit
        out = self.Gamma.one()
        for i in self.a_indices:
            e = a_exp[i]
            if e == 0:
                continue
            img = self.eta_R_images[self.Gamma.gen_names[i]]
            out = out * (img ** e if e > 0 else img.unit_inverse() ** (-e))
        self._eta_R_mono_cache[key] = out
        return out

    def eps(self, p: Poly) -> Poly:
        """Augmentation Gamma -> A: kills every monomial with a coideal part."""
        n = len(self.A.gen_names)
        out = {}
        for e, c in p.terms.items():
            if self.has_t_part(e):
                continue
            out[e[:n]] = out.get(e[:n], 0) + c
        return Poly(self.A, out)

    def antipode(self, p: Poly) -> Poly:
        images = {}
        for i in self.a_indices:
            name = self.Gamma.gen_names[i]
            images[name] = self.eta_R_images[name]
        images.update(self.c_images)
        return poly_map(p, images, self.Gamma)

    def delta_monomial(self, exp) -> "TensorElement":
        key = tuple(exp)
        hit = self._delta_mono_cache.get(key)
        if hit is not None:
            return hit
        out = TensorElement.unit(self, 2)
        for i, e in enumerate(exp):
            if e == 0:
                continue
            name = self.Gamma.gen_names[i]
            if i in set(self.a_indices):
                mono = self.Gamma.gen(name, e)
                out = out.scale_left(mono)
            else:
                img = self.delta_images[name]
                piece = img
                for _ in range(e - 1):
                    piece = piece * img
                out = out * piece
        self._delta_mono_cache[key] = out
        return out

    def delta(self, p: Poly) -> "TensorElement":
        out = TensorElement.zero(self, 2)
        for e, c in p.terms.items():
            out = out + self.delta_monomial(e) * c
        return out

    # -- display ---------------------------------------------------------------

    def describe(self) -> dict:
        return {
            "label": self.label,
            "base": repr(self.A),
            "total": repr(self.Gamma),
            "truncation": self.trunc,
            "etaR": {k: format_poly(v) for k, v in sorted(self.eta_R_images.items())},
            "c": {k: format_poly(v) for k, v in sorted(self.c_images.items())},
        }


class TensorElement:
    """Sum of s-fold monomial tensors over Gamma, base-normalized leftward.

    Keys are s-tuples of Gamma exponents; every factor except the leftmost is
    a pure coideal monomial. Coefficients are exact scalars.
    """

    __slots__ = ("hopf", "s", "terms")

    def __init__(self, hopf: HopfAlgebroidSpec, s: int, terms=None, raw=False):
        self.hopf = hopf
        self.s = s
        if not terms:
            self.terms = {}
        elif raw:
            self.terms = {k: c for k, c in terms.items() if c != 0}
        else:
            self.terms = _tensor_normalize(hopf, s, terms)

    @staticmethod
    def zero(hopf, s):
        return TensorElement(hopf, s, {})

    @staticmethod
    def unit(hopf, s):
        z = hopf.Gamma.zero_exponent()
        return TensorElement(hopf, s, {(z,) * s: Fraction(1)}, raw=True)

    @staticmethod
    def from_factors(hopf, polys):
        """Tensor product of Gamma-polynomials, normalized."""
        s = len(polys)
        terms = {}
        keys = [list(p.terms.items()) for p in polys]

        def rec(i, key, coeff):
            if i == s:
                terms[tuple(key)] = terms.get(tuple(key), 0) + coeff
                return
            for e, c in keys[i]:
                rec(i + 1, key + [e], coeff * c)

        rec(0, [], Fraction(1))
        return TensorElement(hopf, s, terms)

    # -- protocol ---------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.s == other.s
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        G = self.hopf.Gamma
        bits = []
        for key in sorted(self.terms):
            c = self.terms[key]
            factors = ")(x)(".join(format_poly(G.monomial(e)) for e in key)
            prefix = "" if c == 1 else f"{c}*"
            bits.append(f"{prefix}({factors})")
        return " + ".join(bits)

    def is_zero(self):
        return not self.terms

    def degree_of_key(self, key) -> int:
        return sum(self.hopf.Gamma.degree_of_exponent(e) for e in key)

    # -- algebra ------------------------------------------------------------------

    def __add__(self, other):
        norm = self.hopf.Gamma._norm_coeff
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = norm(terms.get(k, 0) + c)
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return TensorElement(self.hopf, self.s, terms, raw=True)

    def __sub__(self, other):
        return self + other * Fraction(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            norm = self.hopf.Gamma._norm_coeff
            return TensorElement(self.hopf, self.s,
                                 {k: norm(c * q) for k, c in self.terms.items()},
                                 raw=True)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(tuple(a + b for a, b in zip(e1, e2)) for e1, e2 in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return TensorElement(self.hopf, self.s, out)

    __rmul__ = __mul__

    def scale_left(self, p: Poly) -> "TensorElement":
        """Multiply the leftmost factor by a Gamma-polynomial."""
        out = {}
        for k, c in self.terms.items():
            for e, q in p.terms.items():
                k2 = (tuple(a + b for a, b in zip(k[0], e)),) + k[1:]
                out[k2] = out.get(k2, 0) + c * q
        return TensorElement(self.hopf, self.s, out)

    # -- cosimplicial moves ----------------------------------------------------------

    def apply_delta(self, i: int) -> "TensorElement":
        """Comultiply factor i, yielding an (s+1)-fold tensor."""
        out = {}
        for key, c in self.terms.items():
            dt = self.hopf.delta_monomial(key[i])
            for (dl, dr), c2 in dt.terms.items():
                k = key[:i] + (dl, dr) + key[i + 1:]
                out[k] = out.get(k, 0) + c * c2
        return TensorElement(self.hopf, self.s + 1, out)

    def contract_eps(self, i: int) -> "TensorElement | Poly":
        """Apply the augmentation to factor i and merge; Poly when s = 1... s=2."""
        H = self.hopf
        if self.s == 1:
            raise ValueError("contract_eps needs at least two factors")
        out = {}
        for key, c in self.terms.items():
            if H.has_t_part(key[i]):
                continue
            if i == 0:
                merged = tuple(a + b for a, b in zip(key[0], key[1]))
                k = (merged,) + key[2:]
            else:
                # factor i is a pure coideal monomial with zero t-part: the unit
                k = key[:i] + key[i + 1:]
            out[k] = out.get(k, 0) + c
        if self.s == 2:
            return Poly(H.Gamma, {k[0]: c for k, c in out.items()})
        return TensorElement(H, self.s - 1, out)

    def to_poly_antipode_mult(self) -> Poly:
        """mult o (c (x) id) applied to a two-fold tensor."""
        H = self.hopf
        assert self.s == 2
        out = H.Gamma.zero()
        for (l, r), c in self.terms.items():
            out = out + H.antipode(H.Gamma.monomial(l)) * H.Gamma.monomial(r) * c
        return out


def _tensor_normalize(hopf: HopfAlgebroidSpec, s: int, terms) -> dict:
    norm = hopf.Gamma._norm_coeff
    out: dict = {}
    stack = [(k, Fraction(c)) for k, c in terms.items() if c != 0]
    while stack:
        key, coeff = stack.pop()
        idx = None
        for i in range(s - 1, 0, -1):
            if hopf.has_a_part(key[i]):
                idx = i
                break
        if idx is None:
            c = norm(coeff)
            if c:
                tot = out.get(key, 0) + c
                tot = norm(tot) if tot else tot
                if tot:
                    out[key] = tot
                else:
                    out.pop(key, None)
            continue
        a_exp, t_exp = hopf.split_exponent(key[idx])
        img = hopf.eta_R_monomial(a_exp)
        for mono, c in img.terms.items():
            newkey = list(key)
            newkey[idx - 1] = tuple(a + b for a, b in zip(key[idx - 1], mono))
            newkey[idx] = t_exp
            stack.append((tuple(newkey), coeff * c))
    return out


def right_coordinates(H: HopfAlgebroidSpec, gamma: Poly) -> dict:
    """Expand gamma = sum_tau tau * eta_R(r_tau) over the coideal monomials.

    The coideal monomials are a basis of Gamma as a right module over the
    base; the expansion is triangular in the coideal degree and terminates
    because the right unit is the identity plus higher coideal terms.
    """
    out: dict = {}
    work = gamma
    guard = 0
    while not work.is_zero():
        guard += 1
        if guard > 10000:
            raise RuntimeError("right-coordinate expansion did not terminate")
        layers: dict = {}
        n = len(H.A.gen_names)
        for e, c in work.terms.items():
            a_exp, t_exp = H.split_exponent(e)
            layers.setdefault(t_exp, {})[a_exp[:n]] = c
        tdeg = {t: H.Gamma.degree_of_exponent(t) for t in layers}
        dmin = min(tdeg.values())
        step = H.Gamma.zero()
        for t_exp in [t for t, d in tdeg.items() if d == dmin]:
            r = Poly(H.A, layers[t_exp])
            out[t_exp] = out.get(t_exp, H.A.zero()) + r
            step = step + H.Gamma.monomial(t_exp) * H.eta_R(r)
        work = work - step
    return {t: r for t, r in out.items() if not r.is_zero()}


# -- axiom verification ------------------------------------------------------------


@dataclass(frozen=True)
class HopfAxiomReport:
    checks: tuple  # (axiom, generator, ok, residual-string)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok, _ in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[2]]

    def __str__(self):
        lines = [f"{'PASS' if ok else 'FAIL'}  {axiom} @ {gen}" + ("" if ok else f"  residual: {res}")
                 for axiom, gen, ok, res in self.checks]
        return "\n".join(lines)


def check_hopf_axioms(H: HopfAlgebroidSpec) -> HopfAxiomReport:
    """Counit, coassociativity and antipode identities on every generator."""
    checks = []

    def record(axiom, gen, residual):
        ok = residual.is_zero() if hasattr(residual, "is_zero") else not residual
        res = "" if ok else repr(residual)
        checks.append((axiom, gen, ok, res))

    for name in H.A.gen_names:
        if H.A.index[name] in H.A.rewrites:
            continue
        a = H.A.gen(name)
        record("eps o eta_L = id", name, H.eps(H.a_to_gamma(a)) - a)
        record("eps o eta_R = id", name, H.eps(H.eta_R(a)) - a)

    gamma_gens = [H.Gamma.gen_names[i] for i in H.t_indices
                  if i not in H.Gamma.rewrites]
    for name in gamma_gens:
        g = H.Gamma.gen(name)
        d = H.delta(g)
        record("counit left", name, d.contract_eps(0) - g)
        record("counit right", name, d.contract_eps(1) - g)
        record("coassociativity", name, d.apply_delta(0) - d.apply_delta(1))
        record("antipode involution", name, H.antipode(H.antipode(g)) - g)
        record("antipode product", name,
               d.to_poly_antipode_mult() - H.a_to_gamma(H.eps(g)))

    for name in H.A.gen_names:
        if H.A.index[name] in H.A.rewrites:
            continue
        record("c o eta_R = eta_L", name,
               H.antipode(H.eta_R(H.A.gen(name))) - H.a_to_gamma(H.A.gen(name)))

    return HopfAxiomReport(tuple(checks))


def integrality_report(H: HopfAlgebroidSpec, p: int):
    """Minimum p-valuation over every structure-map coefficient."""
    vals = []
    for poly in list(H.eta_R_images.values()) + list(H.c_images.values()):
        vals.append(poly.min_p_valuation(p))
    for tensor in H.delta_images.values():
        for c in tensor.terms.values():
            from .scalars import p_valuation_fraction
            vals.append(p_valuation_fraction(c, p))
    return min(vals, default=INFINITY)


# -- the p-typical pair -------------------------------------------------------------


def bp_hopf_algebroid(p: int, D: int, generators: str = "hazewinkel") -> HopfAlgebroidSpec:
    """The p-typical Hopf algebroid truncated at algebraic degree D.

    The right unit, comultiplication and antipode are solved rationally in
    the m-coordinates and rewritten to the v-generators; every coefficient is
    then certified p-integral.
    """
    if D < p - 1:
        raise TruncationTooSmall(f"need D >= p - 1 = {p - 1}")
    N = 0
    while p ** (N + 1) - 1 <= D:
        N += 1

    # rational scaffolding over Q[m][t]
    m_gens = [(f"m{i}", p**i - 1) for i in range(1, N + 1)]
    t_gens = [(f"t{i}", p**i - 1) for i in range(1, N + 1)]
    Am = GradedRingSpec(QQ, m_gens)
    Gm = GradedRingSpec(QQ, m_gens + t_gens)

    def m(i):
        return Gm.one() if i == 0 else Gm.gen(f"m{i}")

    def t(i, power=1):
        return Gm.one() if i == 0 else Gm.gen(f"t{i}") ** power

    eta_R_m = {}
    for n in range(1, N + 1):
        eta_R_m[f"m{n}"] = sum((m(i) * t(n - i, p**i) for i in range(1, n + 1)),
                               t(n))
    scaffold = HopfAlgebroidSpec(Am, Gm, eta_R_m, {}, {}, D, label="m-scaffold")

    # comultiplication, solved degreewise from the defining identity
    for n in range(1, N + 1):
        rhs = TensorElement.zero(scaffold, 2)
        for i in range(0, n + 1):
            for j in range(0, n - i + 1):
                k = n - i - j
                left = m(i) * t(j, p**i)
                right = Gm.one() if k == 0 else Gm.gen(f"t{k}") ** (p ** (i + j))
                rhs = rhs + TensorElement.from_factors(scaffold, [left, right])
        for i in range(1, n + 1):
            j = n - i
            if j == 0:
                rhs = rhs - TensorElement.unit(scaffold, 2).scale_left(m(i))
            else:
                dt = scaffold.delta_images[f"t{j}"]
                dpow = dt
                for _ in range(p**i - 1):
                    dpow = dpow * dt
                rhs = rhs - dpow.scale_left(m(i))
        scaffold.delta_images[f"t{n}"] = rhs
        scaffold._delta_mono_cache.clear()

    # antipode, solved from sum m_i t_j^{p^i} c(t_k)^{p^{i+j}} = m_n
    for n in range(1, N + 1):
        acc = m(n)
        for i in range(0, n + 1):
            for j in range(0, n - i + 1):
                k = n - i - j
                if k == n or (i == n):
                    if (i, j, k) == (n, 0, 0):
                        acc = acc - m(n)
                    continue
                if k == 0:
                    acc = acc - m(i) * t(j, p**i)
                else:
                    ck = scaffold.c_images[f"t{k}"]
                    acc = acc - m(i) * t(j, p**i) * (ck ** (p ** (i + j)))
        scaffold.c_images[f"t{n}"] = acc

    # rewrite m -> v and certify integrality
    A = GradedRingSpec(ZP(p), [(f"v{i}", p**i - 1) for i in range(1, N + 1)])
    G = GradedRingSpec(ZP(p), [(f"v{i}", p**i - 1) for i in range(1, N + 1)] + t_gens)
    ms = m_in_terms_of_v(p, N, generators,
                         ring=GradedRingSpec(QQ, [(f"v{i}", p**i - 1) for i in range(1, N + 1)]))
    Gv_q = GradedRingSpec(QQ, list(zip(A.gen_names, A.gen_degrees)) + t_gens)
    subs = {f"m{i}": _pad_to(ms[i - 1], Gv_q) for i in range(1, N + 1)}
    subs.update({f"t{i}": Gv_q.gen(f"t{i}") for i in range(1, N + 1)})

    def to_v(poly_m: Poly) -> Poly:
        q = poly_map(poly_m, subs, Gv_q)
        if q.min_p_valuation(p) < 0:
            raise ValueError(f"non p-integral structure coefficient in {q!r}")
        return Poly(G, dict(q.terms))

    vs = hazewinkel_generators(p, N) if generators == "hazewinkel" else araki_generators(p, N)
    eta_R = {}
    for n in range(1, N + 1):
        vm = _pad_to(vs[n - 1], Gm)
        eta_R[f"v{n}"] = to_v(poly_map(vm, {**{f"m{i}": eta_R_m[f"m{i}"] for i in range(1, N + 1)},
                                             **{f"t{i}": Gm.gen(f"t{i}") for i in range(1, N + 1)}},
                                       Gm))

    spec = HopfAlgebroidSpec(A, G, eta_R, {}, {}, D,
                             label=f"p-typical pair at p={p} ({generators})")
    for n in range(1, N + 1):
        spec.c_images[f"t{n}"] = to_v(scaffold.c_images[f"t{n}"])
        tens = scaffold.delta_images[f"t{n}"]
        by_right: dict = {}
        for (l, r), c in tens.terms.items():
            bucket = by_right.setdefault(r, {})
            bucket[l] = bucket.get(l, 0) + c
        out = {}
        for r, left_terms in by_right.items():
            lp = to_v(Poly(Gm, left_terms))
            r2 = _exp_to(G, Gm, r)
            for e, q in lp.terms.items():
                out[(e, r2)] = out.get((e, r2), 0) + q
        spec.delta_images[f"t{n}"] = TensorElement(spec, 2, out)
    return spec


def _pad_to(poly: Poly, ring: GradedRingSpec) -> Poly:
    """Reinterpret a polynomial in a ring whose generators extend its own."""
    lut = [ring.index[n] for n in poly.ring.gen_names]
    width = len(ring.gen_names)
    out = {}
    for e, c in poly.terms.items():
        e2 = [0] * width
        for i, x in enumerate(e):
            e2[lut[i]] = x
        out[tuple(e2)] = c
    return Poly(ring, out)


def _exp_to(ring: GradedRingSpec, src: GradedRingSpec, exp):
    out = [0] * len(ring.gen_names)
    for i, x in enumerate(exp):
        if x:
            out[ring.index[src.gen_names[i]]] = x
    return tuple(out)


# -- the rational one-dimensional model -------------------------------------------------


def mu_hopf_algebroid_rational(D: int) -> HopfAlgebroidSpec:
    """Base Q[m_1..m_D], total ring adds b_1..b_D; right unit from the
    logarithm transported through the inverse of the b-series."""
    if D < 1:
        raise TruncationTooSmall("need D >= 1")
    m_gens = [(f"m{i}", i) for i in range(1, D + 1)]
    b_gens = [(f"b{i}", i) for i in range(1, D + 1)]
    A = GradedRingSpec(QQ, m_gens)
    G = GradedRingSpec(QQ, m_gens + b_gens)

    ell = TruncSeries(G, 1, D + 1, {(1,): G.one(),
                                    **{(i + 1,): G.gen(f"m{i}") for i in range(1, D + 1)}})
    b_series = TruncSeries(G, 1, D + 1, {(1,): G.one(),
                                         **{(i + 1,): G.gen(f"b{i}") for i in range(1, D + 1)}})
    b_inv = b_series.reverse()
    log_r = ell.compose(b_inv)
    eta_R = {f"m{k}": log_r.coefficient((k + 1,)) for k in range(1, D + 1)}

    spec = HopfAlgebroidSpec(A, G, eta_R, {}, {}, D, label="rational 1-dim model")

    # antipode: the b-series of c is the reversion of the b-series
    c_series = b_series.reverse()
    for n in range(1, D + 1):
        spec.c_images[f"b{n}"] = c_series.coefficient((n + 1,))

    # comultiplication from composition in a two-sided scratch ring
    scratch = GradedRingSpec(QQ, [(f"L{i}", i) for i in range(1, D + 1)]
                             + [(f"R{i}", i) for i in range(1, D + 1)])
    BL = TruncSeries(scratch, 1, D + 1, {(1,): scratch.one(),
                                         **{(i + 1,): scratch.gen(f"L{i}") for i in range(1, D + 1)}})
    BR = TruncSeries(scratch, 1, D + 1, {(1,): scratch.one(),
                                         **{(i + 1,): scratch.gen(f"R{i}") for i in range(1, D + 1)}})
    comp = BR.compose(BL)
    z = G.zero_exponent()
    for n in range(1, D + 1):
        poly = comp.coefficient((n + 1,))
        terms = {}
        for e, c in poly.terms.items():
            lexp = list(z)
            rexp = list(z)
            for i in range(1, D + 1):
                lexp[G.index[f"b{i}"]] = e[scratch.index[f"L{i}"]]
                rexp[G.index[f"b{i}"]] = e[scratch.index[f"R{i}"]]
            key = (tuple(lexp), tuple(rexp))
            terms[key] = terms.get(key, 0) + c
        spec.delta_images[f"b{n}"] = TensorElement(spec, 2, terms)
    return spec


# -- invariant ideals, quotients, induced algebroids --------------------------------------


def invariant_ideal_check(H: HopfAlgebroidSpec, gens):
    """True iff eta_R(g) - eta_L(g) lies in I*Gamma for every generator g."""
    rel_strings = [g if isinstance(g, str) else format_poly(g) for g in gens]
    try:
        G_quot = H.Gamma.derived(extra_relations=rel_strings)
    except UnsupportedPresentation as exc:
        raise UnsupportedPresentation(f"ideal outside supported class: {exc}")
    details = []
    ok = True
    for g_str in rel_strings:
        from .rings import parse_poly
        g = parse_poly(H.A, g_str)
        residue = H.eta_R(g) - H.a_to_gamma(g)
        reduced = Poly(G_quot, dict(residue.terms))
        good = reduced.is_zero()
        ok = ok and good
        details.append({"generator": g_str, "ok": good,
                        "residue": format_poly(residue),
                        "residue_mod_ideal": format_poly(reduced)})
    return ok, details


def quotient_hopf_algebroid(H: HopfAlgebroidSpec, gens) -> HopfAlgebroidSpec:
    """(A/I, Gamma/I Gamma) for an invariant ideal I in the supported class."""
    ok, details = invariant_ideal_check(H, gens)
    if not ok:
        bad = next(d for d in details if not d["ok"])
        raise NotInvariant(f"{bad['generator']} has residue {bad['residue_mod_ideal']}")
    rel_strings = [g if isinstance(g, str) else format_poly(g) for g in gens]
    A2 = H.A.derived(extra_relations=rel_strings)
    G2 = H.Gamma.derived(extra_relations=rel_strings)
    eta_R = {k: Poly(G2, dict(v.terms)) for k, v in H.eta_R_images.items()
             if H.A.index[k] not in A2.rewrites}
    c_img = {k: Poly(G2, dict(v.terms)) for k, v in H.c_images.items()}
    spec = HopfAlgebroidSpec(A2, G2, eta_R, {}, c_img, H.trunc,
                             label=f"{H.label} / ({', '.join(rel_strings)})")
    for name, tens in H.delta_images.items():
        out = {}
        for (l, r), c in tens.terms.items():
            lp = Poly(G2, {l: c})
            rp = Poly(G2, {r: Fraction(1)})
            for e1, c1 in lp.terms.items():
                for e2, c2 in rp.terms.items():
                    key = (e1, e2)
                    out[key] = out.get(key, 0) + c1 * c2
        spec.delta_images[name] = TensorElement(spec, 2, out)
    return spec


@dataclass
class RingMap:
    """A graded ring map out of H.A, given on generators."""

    source: GradedRingSpec
    target: GradedRingSpec
    images: dict  # source gen name -> Poly in target
    kind: str = "general"  # "identity" | "quotient" | "general"

    def apply(self, p: Poly) -> Poly:
        return poly_map(p, self.images, self.target)


@dataclass
class HopfMorphism:
    source: HopfAlgebroidSpec
    target: HopfAlgebroidSpec
    f0: RingMap                 # target.A -> source.A  (scheme direction X -> Y)
    gamma_images: dict          # target Gamma gen -> Poly in source Gamma
    by_construction: bool = False

    def f1(self, p: Poly) -> Poly:
        return poly_map(p, self.gamma_images, self.source.Gamma)


def induced_hopf_algebroid(H: HopfAlgebroidSpec, f0: RingMap):
    """Base-change the algebroid along f0: A -> B.

    Quotient maps reuse the invariant-ideal quotient; localized monomial maps
    produce a truncation-level presentation carrying the right-unit images of
    the killed generators as opaque relations, with a formal inverse for the
    right-unit image of each inverted generator.
    """
    if f0.source != H.A:
        raise UnsupportedPresentation("map must start at the algebroid base")
    B = f0.target

    if f0.kind == "identity":
        morphism = HopfMorphism(H, H, f0,
                                {n: H.Gamma.gen(n) for n in H.Gamma.gen_names},
                                by_construction=True)
        return H, morphism

    if f0.kind == "quotient":
        rels = [r for r in B.relation_strings if r not in H.A.relation_strings]
        spec = quotient_hopf_algebroid(H, rels)
        gamma_images = {n: spec.Gamma.gen(n) for n in H.Gamma.gen_names}
        morphism = HopfMorphism(spec, H, f0, gamma_images, by_construction=True)
        return spec, morphism

    # general localized/monomial case: B (x)_A Gamma (x)_A B, truncation-presented
    t_gens = [(H.Gamma.gen_names[i], H.Gamma.gen_degrees[i]) for i in H.t_indices]
    gens = list(zip(B.gen_names, B.gen_degrees)) + t_gens
    combined = GradedRingSpec(B.domain, gens, B.relation_strings, B.inverted)
    t_identity = {t: combined.gen(t) for t, _ in t_gens}
    images_in_combined = {n: _pad_to(f0.images[n], combined) for n in H.A.gen_names}
    opaque = []          # right-unit images of killed generators, set to zero
    formal_inverses = []  # (w-name, degree, right-unit image of an inverted one)
    for name in H.A.gen_names:
        img = images_in_combined[name]
        eta_img = poly_map(H.eta_R_images[name],
                           {**images_in_combined, **t_identity}, combined)
        if img.is_zero():
            if not eta_img.is_zero():
                opaque.append(format_poly(eta_img))
        elif img.is_unit():
            deg = H.A.gen_degrees[H.A.index[name]]
            formal_inverses.append((f"w_{name}", deg, eta_img))
    extra_gens = [(w, d) for w, d, _ in formal_inverses]
    defining = [format_poly(_pad_up(eta_img, gens + extra_gens, combined, w))
                for w, _, eta_img in formal_inverses]
    gamma_b = GradedRingSpec(B.domain, gens + extra_gens, list(B.relation_strings),
                             set(B.inverted) | {w for w, _, _ in formal_inverses},
                             extra_relations=tuple(opaque + defining))
    spec = HopfAlgebroidSpec(B, gamma_b,
                             {n: _pad_to(B.gen(n), gamma_b) for n in B.gen_names},
                             {}, {}, H.trunc,
                             label=f"induced over {B!r} (truncation-presented)")
    spec.induced_opaque = True
    spec.recorded_eta_R_of_base = {
        name: _pad_to(poly_map(H.eta_R_images[name],
                               {**images_in_combined, **t_identity}, combined), gamma_b)
        for name in H.A.gen_names}
    gamma_images = {}
    for n in H.Gamma.gen_names:
        if n in H.A.gen_names:
            gamma_images[n] = _pad_to(images_in_combined[n], gamma_b)
        else:
            gamma_images[n] = gamma_b.gen(n)
    morphism = HopfMorphism(spec, H, f0, gamma_images, by_construction=True)
    return spec, morphism


def _pad_up(eta_img: Poly, gen_list, combined: GradedRingSpec, wname: str) -> Poly:
    """w - eta_img as a polynomial over the extended generator list."""
    scratch = GradedRingSpec(combined.domain, gen_list, inverted=combined.inverted)
    return scratch.gen(wname) - _pad_to(eta_img, scratch)


def _lift(p: Poly, ring: GradedRingSpec) -> Poly:
    return _pad_to(p, ring)


# -- morphism diagnostics ----------------------------------------------------------------


def morphism_diagnostics(mor: HopfMorphism, max_degree: int | None = None) -> dict:
    """Validate a Hopf algebroid morphism and decide whether the canonical
    comparison onto the induced algebroid is an isomorphism degreewise."""
    H, K = mor.source, mor.target  # map of schemes H -> K, rings K -> H
    D = min(H.trunc, K.trunc, max_degree or H.trunc)
    report = {"valid_morphism": True, "failures": [], "beta": None}

    if not H.induced_opaque:
        for name in K.A.gen_names:
            if K.A.index[name] in K.A.rewrites:
                continue
            lhs = mor.f1(K.eta_R(K.A.gen(name)))
            rhs = H.eta_R(mor.f0.apply(K.A.gen(name)))
            if lhs != rhs:
                report["valid_morphism"] = False
                report["failures"].append(("eta_R compatibility", name))
        for name in [K.Gamma.gen_names[i] for i in K.t_indices]:
            if K.Gamma.index[name] in K.Gamma.rewrites:
                continue
            g = K.Gamma.gen(name)
            dk = K.delta(g)
            mapped = TensorElement(H, 2, {})
            for (l, r), c in dk.terms.items():
                lp = mor.f1(K.Gamma.monomial(l))
                rp = mor.f1(K.Gamma.monomial(r))
                mapped = mapped + TensorElement.from_factors(H, [lp, rp]) * c
            dh = H.delta(mor.f1(g))
            if mapped != dh:
                report["valid_morphism"] = False
                report["failures"].append(("comultiplication compatibility", name))
            ek = mor.f0.apply(K.eps(g))
            eh = H.eps(mor.f1(g))
            if ek != eh:
                report["valid_morphism"] = False
                report["failures"].append(("augmentation compatibility", name))

    if not report["valid_morphism"]:
        report["beta"] = "not evaluated (not a Hopf algebroid morphism)"
        return report

    if mor.by_construction:
        report["beta"] = "isomorphism (canonical comparison of an induced presentation)"
        return report

    if mor.f0.kind == "identity":
        # beta is f1 itself: check degreewise bijectivity on monomial bases
        for d in range(0, D + 1):
            src = K.Gamma.graded_piece(d)
            tgt = H.Gamma.graded_piece(d)
            if src is None or tgt is None:
                report["beta"] = f"undecidable at degree {d} (infinite rank piece)"
                return report
            if len(src) != len(tgt):
                report["beta"] = f"not an isomorphism (rank differs at degree {d})"
                return report
            from .intlinalg import IntMatrix, smith_normal_form
            index = {e: i for i, e in enumerate(tgt)}
            mat = [[0] * len(src) for _ in range(len(tgt))]
            ok_int = True
            for j, e in enumerate(src):
                img = mor.f1(K.Gamma.monomial(e))
                for e2, c in img.terms.items():
                    if c.denominator != 1:
                        ok_int = False
                    mat[index[e2]][j] = int(c) if c.denominator == 1 else 0
            if not ok_int:
                report["beta"] = f"undecidable at degree {d} (non-integer matrix)"
                return report
            if src:
                snf = smith_normal_form(IntMatrix.make(mat))
                p = H.Gamma.effective_domain.p if H.Gamma.effective_domain.kind in ("Fp", "Zp") else 0
                unit_ok = all((x != 0 and (p == 0 and abs(x) == 1 or p and x % p != 0))
                              for x in snf.divisors) and snf.rank == len(src)
                if not unit_ok:
                    report["beta"] = f"not an isomorphism (fails at degree {d})"
                    return report
        report["beta"] = f"isomorphism degreewise up to {D}"
        return report

    report["beta"] = "undecidable presentation"
    return report
