"""Formal group laws truncated at a fixed variable degree.

Everything here is exact: validation reports the first failing coefficient,
logarithms are computed from the invariant differential, p-typification uses
the idempotent that keeps only p-power exponents of the logarithm, and
heights come with truncation-honest verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    LeadingCoefficientNotUnit,
    TorsionBase,
    TruncationTooSmall,
)
from .rings import GradedRingSpec, Poly, _is_prime
from .scalars import FP, QQ, ZP, Domain
from .series import TruncSeries, change_ring


# -- reports and results --------------------------------------------------------


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    witness: tuple | None = None  # (exponent tuple, offending coefficient repr)

    def __str__(self):
        if self.ok:
            return f"{self.name}: pass"
        e, c = self.witness
        return f"{self.name}: FAIL at coefficient {e} ({c})"


@dataclass(frozen=True)
class FglReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def __str__(self):
        return "; ".join(str(c) for c in self.checks)


@dataclass(frozen=True)
class HeightVerdict:
    kind: str  # "finite" | "at_least" | "infinity_within_bound"
    n: int | None = None
    bound: int | None = None

    @staticmethod
    def finite(n: int) -> "HeightVerdict":
        return HeightVerdict("finite", n=n)

    @staticmethod
    def at_least(n: int) -> "HeightVerdict":
        return HeightVerdict("at_least", n=n)

    @staticmethod
    def infinity(bound: int) -> "HeightVerdict":
        return HeightVerdict("infinity_within_bound", bound=bound)

    def __str__(self):
        if self.kind == "finite":
            return str(self.n)
        if self.kind == "at_least":
            return f">= {self.n}"
        return f"infinity (within bound {self.bound})"


@dataclass
class FormalGroupLaw:
    """A validated (or fault-reported) two-variable truncated group law."""

    ring: GradedRingSpec
    series: TruncSeries  # two variables
    trunc: int
    report: FglReport
    log: TruncSeries | None = None  # cached logarithm over the rationalized ring

    @property
    def valid(self) -> bool:
        return self.report.passed


# -- validation -------------------------------------------------------------------


def _first_difference(a: TruncSeries, b: TruncSeries):
    diff = a - b
    if diff.is_zero():
        return None
    e = min(diff.terms, key=lambda e: (sum(e), e))
    return (e, repr(diff.terms[e]))


def validate_fgl(F: TruncSeries, D: int | None = None) -> FormalGroupLaw:
    """Check unit, commutativity and associativity up to the truncation."""
    if F.nvars != 2:
        raise ValueError("a formal group law is a two-variable series")
    D = F.trunc if D is None else min(D, F.trunc)
    F = F.truncate(D)
    ring = F.ring
    checks = []

    x1 = TruncSeries.variable(ring, 1, D)
    fx0 = TruncSeries(ring, 1, D,
                      {(i,): c for (i, j), c in F.terms.items() if j == 0})
    f0y = TruncSeries(ring, 1, D,
                      {(j,): c for (i, j), c in F.terms.items() if i == 0})
    witness = _first_difference(fx0, x1) or _first_difference(f0y, x1)
    checks.append(AxiomCheck("unit", witness is None, witness))

    swapped = TruncSeries(ring, 2, D, {(j, i): c for (i, j), c in F.terms.items()})
    witness = _first_difference(F, swapped)
    checks.append(AxiomCheck("commutativity", witness is None, witness))

    x3 = TruncSeries.variable(ring, 3, D, 0)
    y3 = TruncSeries.variable(ring, 3, D, 1)
    z3 = TruncSeries.variable(ring, 3, D, 2)
    fxy = F.substitute([x3, y3])
    fyz = F.substitute([y3, z3])
    left = F.substitute([fxy, z3])
    right = F.substitute([x3, fyz])
    witness = _first_difference(left, right)
    checks.append(AxiomCheck("associativity", witness is None, witness))

    return FormalGroupLaw(ring, F, D, FglReport(tuple(checks)))


# -- basic laws ----------------------------------------------------------------------


def additive_fgl(ring: GradedRingSpec, D: int) -> FormalGroupLaw:
    F = TruncSeries(ring, 2, D, {(1, 0): ring.one(), (0, 1): ring.one()})
    return validate_fgl(F, D)


def multiplicative_fgl(ring: GradedRingSpec, D: int, sign: int = 1) -> FormalGroupLaw:
    F = TruncSeries(ring, 2, D, {(1, 0): ring.one(), (0, 1): ring.one(),
                                 (1, 1): ring.const(sign)})
    return validate_fgl(F, D)


def fgl_from_log(log: TruncSeries, D: int, validate: bool = True) -> FormalGroupLaw:
    """exp(log x + log y); exact group law for any log = t + O(t^2)."""
    ring = log.ring
    log = log.truncate(D)
    exp = log.reverse()
    lx = log.embed(2, [0])
    ly = log.embed(2, [1])
    F = exp.substitute([lx + ly])
    fgl = validate_fgl(F, D) if validate else FormalGroupLaw(
        ring, F, D, FglReport((AxiomCheck("constructed-from-log", True),)))
    fgl.log = log
    return fgl


def universal_fgl(D: int) -> FormalGroupLaw:
    """The group law with logarithm t + m_1 t^2 + ... over Q[m_1, m_2, ...]."""
    if D < 2:
        raise TruncationTooSmall("universal law needs truncation at least 2")
    ring = GradedRingSpec(QQ, [(f"m{i}", i) for i in range(1, D)])
    terms = {(1,): ring.one()}
    for i in range(1, D):
        terms[(i + 1,)] = ring.gen(f"m{i}")
    log = TruncSeries(ring, 1, D, terms)
    return fgl_from_log(log, D)


def specialize_fgl(F: FormalGroupLaw, values: dict, domain: Domain | None = None) -> FormalGroupLaw:
    """Substitute exact scalars for the base-ring generators."""
    domain = domain or QQ
    target = GradedRingSpec(domain, [])

    def ev(poly: Poly) -> Poly:
        total = Fraction(0)
        for exp, c in poly.terms.items():
            v = c
            for i, e in enumerate(exp):
                if e:
                    v *= Fraction(values[poly.ring.gen_names[i]]) ** e
            total += v
        return target.const(total)

    series = F.series.map_coefficients(ev, target)
    return validate_fgl(series, F.trunc)


# -- logarithm and p-typification ----------------------------------------------------


def log_series(F: FormalGroupLaw) -> TruncSeries:
    """Logarithm from the invariant differential 1/(dF/dy)(t, 0), integrated."""
    ring = F.ring
    if ring.effective_domain.kind == "Fp":
        raise TorsionBase(f"no logarithm over {ring.effective_domain}")
    if F.log is not None:
        return F.log
    D = F.trunc
    dF = F.series.derivative(1)
    omega = TruncSeries(ring, 1, D,
                        {(i,): c for (i, j), c in dF.terms.items() if j == 0})
    ringq = ring.rationalized()
    omega_q = change_ring(omega, ringq)
    ell = omega_q.reciprocal().integrate().truncate(D)
    F.log = ell
    return ell


def _p_power_test(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def is_p_typical(log: TruncSeries, p: int) -> bool:
    """True when the logarithm is supported on exponents 1, p, p^2, ..."""
    return all(_p_power_test(k, p) for (k,) in log.terms)


def p_typify(F: FormalGroupLaw, p: int):
    """Cartier: (F_typ, f) with f strict and f(F(x,y)) = F_typ(f(x), f(y)).

    The base must be a torsion-free Z_(p)-algebra; the typical law keeps only
    the p-power exponents of the logarithm.
    """
    ring = F.ring
    if ring.effective_domain.kind == "Fp":
        raise TorsionBase("p-typification needs a torsion-free base")
    D = F.trunc
    ell = log_series(F)
    typ_terms = {e: c for e, c in ell.terms.items() if _p_power_test(e[0], p)}
    ell_typ = TruncSeries(ell.ring, 1, D, typ_terms)
    exp_typ = ell_typ.reverse()
    f_q = exp_typ.compose(ell)
    F_typ_q = fgl_from_log(ell_typ, D, validate=False).series

    def coerce(poly):
        return _coerce_scalars(poly, ring)

    F_typ = validate_fgl(F_typ_q.map_coefficients(coerce, ring), D)
    F_typ.log = ell_typ
    f = PointedAutomorphism(f_q.map_coefficients(coerce, ring))
    return F_typ, f


def _coerce_scalars(poly: Poly, ring: GradedRingSpec) -> Poly:
    for c in poly.terms.values():
        ring.domain.normalize(c)  # raises if the value left the base domain
    return Poly(ring, dict(poly.terms))


# -- p-series and height ------------------------------------------------------------


def p_series(F: FormalGroupLaw, p: int) -> TruncSeries:
    """[p](t) = F(t, [p-1](t)), built by iteration."""
    D = F.trunc
    t = TruncSeries.variable(F.ring, 1, D)
    acc = TruncSeries.zero(F.ring, 1, D)
    for _ in range(p):
        acc = F.series.substitute([t, acc])
    return acc


def height(F: FormalGroupLaw, bound: int) -> HeightVerdict:
    """Height read from the first nonzero coefficient of [p](t).

    Characteristic zero gives height 0; over characteristic p the verdict is
    bounded by the truncation, which must reach p^bound.
    """
    ring = F.ring
    p = ring.effective_domain.characteristic or ring.characteristic
    if p == 0:
        return HeightVerdict.finite(0)
    if F.trunc < p ** bound:
        raise TruncationTooSmall(
            f"height bound {bound} at p={p} needs truncation >= {p ** bound}")
    ps = p_series(F, p)
    nonzero = sorted(k for (k,) in ps.terms)
    if not nonzero:
        return HeightVerdict.infinity(bound)
    k = nonzero[0]
    if k > p ** bound:
        return HeightVerdict.at_least(bound + 1)
    n = 0
    kk = k
    while kk % p == 0:
        kk //= p
        n += 1
    if kk != 1:
        raise ValueError(f"leading exponent {k} of the p-series is not a p-power")
    return HeightVerdict.finite(n)


# -- p-typical generator families ------------------------------------------------------


def _m_ring(p: int, n_max: int) -> GradedRingSpec:
    return GradedRingSpec(QQ, [(f"m{i}", p**i - 1) for i in range(1, n_max + 1)])


def v_ring(p: int, n_max: int, domain: Domain | None = None) -> GradedRingSpec:
    return GradedRingSpec(domain or ZP(p), [(f"v{i}", p**i - 1) for i in range(1, n_max + 1)])


def hazewinkel_generators(p: int, n_max: int) -> list:
    """v_n solving p m_n = sum_{0<=i<n} m_i v_{n-i}^{p^i}, as Q[m_*] elements."""
    ring = _m_ring(p, n_max)
    vs: list[Poly] = []
    for n in range(1, n_max + 1):
        expr = p * ring.gen(f"m{n}")
        for i in range(1, n):
            expr = expr - ring.gen(f"m{i}") * (vs[n - i - 1] ** (p**i))
        vs.append(expr)
    return vs


def araki_generators(p: int, n_max: int) -> list:
    """v_n solving p m_n = sum_{0<=i<=n} m_i v_{n-i}^{p^i} with v_0 = p."""
    ring = _m_ring(p, n_max)
    vs: list[Poly] = []
    for n in range(1, n_max + 1):
        expr = (p - p ** (p**n)) * ring.gen(f"m{n}")
        for i in range(1, n):
            expr = expr - ring.gen(f"m{i}") * (vs[n - i - 1] ** (p**i))
        vs.append(expr)
    return vs


def m_in_terms_of_v(p: int, n_max: int, flavor: str = "hazewinkel",
                    ring: GradedRingSpec | None = None) -> list:
    """m_n as Q[v_*]-polynomials inverting the chosen generator recursion."""
    ring = ring or GradedRingSpec(QQ, [(f"v{i}", p**i - 1) for i in range(1, n_max + 1)])
    ms: list[Poly] = []
    for n in range(1, n_max + 1):
        acc = ring.gen(f"v{n}")
        for i in range(1, n):
            acc = acc + ms[i - 1] * (ring.gen(f"v{n-i}") ** (p**i))
        if flavor == "hazewinkel":
            ms.append(acc * Fraction(1, p))
        elif flavor == "araki":
            ms.append(acc * Fraction(1, p - p ** (p**n)))
        else:
            raise ValueError(f"unknown generator flavor {flavor!r}")
    return ms


def p_typical_log_values(p: int, v_values: dict, D: int) -> TruncSeries:
    """Logarithm t + sum m_n t^{p^n} for numeric v-specializations."""
    ring = GradedRingSpec(QQ, [])
    ms = [Fraction(1)]
    n_max = 0
    while p ** (n_max + 1) <= D:
        n_max += 1
    for n in range(1, n_max + 1):
        acc = Fraction(v_values.get(n, 0))
        for i in range(1, n):
            acc += ms[i] * Fraction(v_values.get(n - i, 0)) ** (p**i)
        ms.append(acc / p)
    terms = {(1,): ring.one()}
    for n in range(1, n_max + 1):
        if ms[n]:
            terms[(p**n,)] = ring.const(ms[n])
    return TruncSeries(ring, 1, D, terms)


def p_typical_fgl(p: int, v_values: dict, D: int, validate: bool = False) -> FormalGroupLaw:
    """The p-typical law with given numeric v_n values, over Q scalars."""
    return fgl_from_log(p_typical_log_values(p, v_values, D), D, validate=validate)


def honda_fgl(p: int, n: int, D: int | None = None) -> FormalGroupLaw:
    """Height-n specialization: v_n = 1, all other v_i = 0, reduced mod p."""
    D = D or p**n
    F = p_typical_fgl(p, {n: 1}, D)
    return fgl_mod_p(F, p)


def fgl_mod_p(F: FormalGroupLaw, p: int) -> FormalGroupLaw:
    """Reduce a p-integral law over scalar coefficients to F_p."""
    target = GradedRingSpec(FP(p), [])
    if any(c.min_p_valuation(p) < 0 for c in F.series.terms.values()):
        raise TorsionBase(f"coefficients are not p-integral at {p}")

    def red(poly: Poly) -> Poly:
        return Poly(target, dict(poly.terms))

    series = F.series.map_coefficients(red, target)
    out = FormalGroupLaw(target, series, F.trunc,
                         FglReport((AxiomCheck("reduced-mod-p", True),)))
    return out


# -- the pointed automorphism group ---------------------------------------------------


class PointedAutomorphism:
    """f in R[[t]] with f(0) = 0 and unit leading coefficient, truncated."""

    def __init__(self, series: TruncSeries):
        if series.nvars != 1:
            raise ValueError("automorphisms are one-variable series")
        if not series.constant_term().is_zero():
            raise LeadingCoefficientNotUnit("f(0) must vanish")
        if not series.coefficient((1,)).is_unit():
            raise LeadingCoefficientNotUnit("f'(0) must be a unit")
        self.series = series
        self.trunc = series.trunc

    def __eq__(self, other):
        return isinstance(other, PointedAutomorphism) and self.series == other.series

    def __repr__(self):
        return f"PointedAutomorphism({self.series!r})"

    def compose(self, other: "PointedAutomorphism") -> "PointedAutomorphism":
        return PointedAutomorphism(self.series.compose(other.series))

    def invert(self) -> "PointedAutomorphism":
        return PointedAutomorphism(self.series.reverse())

    def leading_coefficient(self) -> Poly:
        return self.series.coefficient((1,))

    def is_strict(self) -> bool:
        return self.leading_coefficient() == self.series.ring.one()

    def filtration_level(self):
        """Largest n >= 0 with f == t mod t^{n+1}; None when f == t within D."""
        if not self.is_strict():
            return 0
        higher = sorted(k for (k,) in self.series.terms if k >= 2)
        if not higher:
            return None
        return higher[0] - 1

    def ga_value(self) -> Poly:
        """Coefficient of t^{level+1}: the additive-group value on its stage."""
        level = self.filtration_level()
        if level is None:
            return self.series.ring.zero()
        return self.series.coefficient((level + 1,))


def aut_group_op(f: PointedAutomorphism, g: PointedAutomorphism | None, op: str):
    if op == "compose":
        return f.compose(g)
    if op == "invert":
        return f.invert()
    if op == "filtration_level":
        return (f.filtration_level(), f.ga_value())
    if op == "leading_coefficient":
        return f.leading_coefficient()
    raise ValueError(f"unknown op {op!r}")


def strict_iso_apply(f: PointedAutomorphism, F: FormalGroupLaw) -> FormalGroupLaw:
    """Transport F along f: (x, y) -> f(F(f^{-1}(x), f^{-1}(y)))."""
    D = min(F.trunc, f.trunc)
    fi = f.series.truncate(D).reverse()
    fix = fi.embed(2, [0])
    fiy = fi.embed(2, [1])
    inner = F.series.truncate(D).substitute([fix, fiy])
    moved = f.series.truncate(D).substitute([inner])
    return validate_fgl(moved, D)
