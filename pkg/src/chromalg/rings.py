"""Finitely presented graded commutative rings and sparse Laurent polynomials.

Supported relation shapes keep zero-testing decidable without a Groebner
engine:

  (i)   generator = polynomial in strictly earlier generators,
  (ii)  generator = 0,
  (iii) a coefficient relation c = 0 whose content fixes the characteristic,
  (iv)  generator^k = 0 (truncated polynomial generators).

Inverted generators get formal inverses (negative exponents); a relation that
kills an inverted generator, or a unit, collapses the ring to zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegreeMismatch,
    DivisionByNonUnit,
    DomainMismatch,
    ImageOfInvertedNotUnit,
    InputError,
    RingMismatch,
    UnsupportedPresentation,
)
from .scalars import FP, QQ, Domain, p_valuation_fraction


class GradedRingSpec:
    """A graded commutative ring given by generators, degrees and relations."""

    def __init__(self, domain: Domain, generators, relations=(), inverted=(),
                 extra_relations=()):
        """generators: iterable of (name, degree); relations: poly strings or
        Poly values over the free ring; inverted: generator names.

        extra_relations holds homogeneous relations outside the supported
        rewriting class; they are carried for display and JSON only, and any
        ring carrying them refuses zero-tests.
        """
        self.domain = domain
        self.gen_names = tuple(name for name, _ in generators)
        self.gen_degrees = tuple(int(d) for _, d in generators)
        if len(set(self.gen_names)) != len(self.gen_names):
            raise InputError("duplicate generator names")
        self.index = {n: i for i, n in enumerate(self.gen_names)}
        self.inverted = frozenset(inverted)
        for name in self.inverted:
            if name not in self.index:
                raise InputError(f"cannot invert unknown generator {name!r}")
        self.characteristic = domain.characteristic
        self.rewrites: dict[int, Poly] = {}
        self.nilpotence: dict[int, int] = {}
        self.is_zero_ring = False
        self.extra_relations = tuple(extra_relations)
        self.relation_strings: list[str] = []
        for rel in relations:
            self._install_relation(rel)
        self._effective_domain = (
            FP(self.characteristic) if self.characteristic and domain.kind != "Fp"
            else domain)

    # -- presentation ----------------------------------------------------

    def _install_relation(self, rel):
        poly = parse_poly(self, rel, raw=True) if isinstance(rel, str) else rel
        self.relation_strings.append(rel if isinstance(rel, str) else format_poly(poly))
        terms = dict(poly.terms)
        if not terms:
            return
        if not poly.is_homogeneous(raw=True):
            raise InputError(f"relation {self.relation_strings[-1]!r} is not homogeneous")
        # coefficient relation: constant c = 0
        if list(terms) == [self.zero_exponent()]:
            c = terms[self.zero_exponent()]
            if self.domain.is_unit(c):
                self.is_zero_ring = True
                return
            n = abs(int(c.numerator))  # denominator is a unit, irrelevant
            if not _is_prime(n):
                raise UnsupportedPresentation(f"characteristic {n} is not prime")
            if self.domain.kind == "Zp" and n != self.domain.p:
                raise UnsupportedPresentation(
                    f"{n} = 0 collapses or fractures Z_({self.domain.p})")
            if self.characteristic not in (0, n):
                raise UnsupportedPresentation("conflicting characteristics")
            self.characteristic = n
            return
        # truncation relation: unit * g^k = 0
        if len(terms) == 1:
            (exp, c), = terms.items()
            support = [(i, e) for i, e in enumerate(exp) if e != 0]
            if len(support) == 1 and support[0][1] >= 2 and self.domain.is_unit(c):
                i, k = support[0]
                if self.gen_names[i] in self.inverted:
                    self.is_zero_ring = True
                    return
                self.nilpotence[i] = min(k, self.nilpotence.get(i, k))
                return
        # find the latest generator appearing; require it linear and solo
        latest = max(max(i for i, e in enumerate(exp) if e != 0) for exp in terms)
        solo = tuple(1 if i == latest else 0 for i in range(len(self.gen_names)))
        if solo not in terms:
            raise UnsupportedPresentation(
                f"relation {self.relation_strings[-1]!r} is not triangular")
        coeff = terms.pop(solo)
        if not self.domain.is_unit(coeff):
            raise UnsupportedPresentation(
                f"leading generator of {self.relation_strings[-1]!r} has non-unit coefficient")
        rest = {}
        for exp, c in terms.items():
            if any(exp[i] != 0 for i in range(latest, len(exp))):
                raise UnsupportedPresentation(
                    f"relation {self.relation_strings[-1]!r} is not triangular")
            rest[exp] = self.domain.divide(-c, coeff)
        if self.gen_names[latest] in self.inverted:
            # killing or rewriting an inverted generator: only unit images keep
            # the ring alive, and a zero image collapses it
            if not rest:
                self.is_zero_ring = True
                return
            raise UnsupportedPresentation(
                f"cannot rewrite inverted generator {self.gen_names[latest]!r}")
        self.rewrites[latest] = Poly(self, rest, raw=True)

    def zero_exponent(self):
        return (0,) * len(self.gen_names)

    @property
    def effective_domain(self) -> Domain:
        return self._effective_domain

    def degree_of_exponent(self, exp) -> int:
        return sum(e * d for e, d in zip(exp, self.gen_degrees))

    def __eq__(self, other):
        return (isinstance(other, GradedRingSpec)
                and self.domain == other.domain
                and self.gen_names == other.gen_names
                and self.gen_degrees == other.gen_degrees
                and self.inverted == other.inverted
                and self.characteristic == other.characteristic
                and {i: g.terms for i, g in self.rewrites.items()}
                    == {i: g.terms for i, g in other.rewrites.items()}
                and self.nilpotence == other.nilpotence
                and self.is_zero_ring == other.is_zero_ring)

    def __hash__(self):
        return hash((self.domain, self.gen_names, self.gen_degrees, self.inverted,
                     self.characteristic, self.is_zero_ring))

    def __repr__(self):
        gens = ", ".join(f"{n}({d})" for n, d in zip(self.gen_names, self.gen_degrees))
        return f"GradedRingSpec({self.domain}; {gens})"

    # -- element constructors --------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, value) -> "Poly":
        q = Fraction(value)
        return Poly(self, {self.zero_exponent(): q})

    def gen(self, name: str, power: int = 1) -> "Poly":
        i = self.index[name]
        if power < 0 and name not in self.inverted:
            raise DivisionByNonUnit(f"generator {name!r} is not inverted")
        exp = tuple(power if j == i else 0 for j in range(len(self.gen_names)))
        return Poly(self, {exp: Fraction(1)})

    def monomial(self, exp, coeff=1) -> "Poly":
        return Poly(self, {tuple(exp): Fraction(coeff)})

    # -- normalization helpers --------------------------------------------

    def _norm_coeff(self, q: Fraction) -> Fraction:
        if self.characteristic:
            p = self.characteristic
            if q.denominator % p == 0:
                raise DivisionByNonUnit(f"{q} is not p-integral at {p}")
            return Fraction(q.numerator * pow(q.denominator, -1, p) % p)
        return q

    def derived(self, *, domain=None, extra_generators=(), extra_relations=(),
                extra_inverted=()) -> "GradedRingSpec":
        """A new spec extending this one; rewrites are re-derived from strings."""
        gens = list(zip(self.gen_names, self.gen_degrees)) + list(extra_generators)
        rels = list(self.relation_strings) + list(extra_relations)
        inv = set(self.inverted) | set(extra_inverted)
        return GradedRingSpec(domain or self.domain, gens, rels, inv)

    def rationalized(self) -> "GradedRingSpec":
        if self.characteristic:
            raise DomainMismatch("ring has torsion; cannot rationalize")
        if self.domain == QQ:
            return self
        return GradedRingSpec(QQ, list(zip(self.gen_names, self.gen_degrees)),
                              self.relation_strings, self.inverted)

    def graded_piece(self, degree: int, restrict_names=None, max_terms: int = 100000):
        """Sorted monomial exponents of the given degree, or None when the
        piece is not visibly finite (several inverted generators interacting)."""
        names = self.gen_names if restrict_names is None else tuple(restrict_names)
        cache = getattr(self, "_piece_cache", None)
        if cache is None:
            cache = self._piece_cache = {}
        ckey = (degree, names)
        if ckey in cache:
            return cache[ckey]
        idxs = [self.index[n] for n in names if self.index[n] not in self.rewrites]
        pos = [i for i in idxs if self.gen_names[i] not in self.inverted]
        inv = [i for i in idxs if self.gen_names[i] in self.inverted]
        if len(inv) > 1 or (inv and pos):
            return None  # not finite rank in general
        out = []

        def rec(pos_left, residual, acc):
            if not pos_left:
                if not inv:
                    if residual == 0:
                        out.append(dict(acc))
                    return
                i = inv[0]
                d = self.gen_degrees[i]
                if d == 0:
                    return
                if residual % d == 0:
                    acc2 = dict(acc)
                    acc2[i] = residual // d
                    out.append(acc2)
                return
            i = pos_left[0]
            d = self.gen_degrees[i]
            if d == 0:
                return rec(pos_left[1:], residual, acc)
            cap = self.nilpotence.get(i)
            e = 0
            while e * d <= residual and (cap is None or e < cap):
                acc[i] = e
                rec(pos_left[1:], residual - e * d, acc)
                e += 1
            acc.pop(i, None)

        rec(pos, degree, {})
        n = len(self.gen_names)
        exps = sorted(tuple(a.get(i, 0) for i in range(n)) for a in out)
        result = None if len(exps) > max_terms else exps
        cache[ckey] = result
        return result


class Poly:
    """Sparse polynomial in normal form over a GradedRingSpec.

    Terms map exponent tuples to nonzero Fraction coefficients; defined
    generators are eliminated and coefficients reduced mod the characteristic.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRingSpec, terms, raw: bool = False):
        self.ring = ring
        if raw:
            self.terms = {e: c for e, c in terms.items() if c != 0}
        else:
            self.terms = _normalize_terms(ring, terms)

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((len(self.terms), frozenset(self.terms.items())))

    def __repr__(self):
        return format_poly(self)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        norm = self.ring._norm_coeff
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = norm(terms.get(e, 0) + c)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms, raw=True)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring._norm_coeff
        return Poly(self.ring, {e: norm(-c) for e, c in self.terms.items()}, raw=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return self.ring.zero()
            return Poly(self.ring,
                        {e: self.ring._norm_coeff(c * q) for e, c in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            inv = self.unit_inverse()
            return inv ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    # -- structure -----------------------------------------------------------

    def degree_terms(self):
        """Map degree -> subpolynomial of that degree."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(self.ring.degree_of_exponent(e), {})[e] = c
        return {d: Poly(self.ring, t, raw=True) for d, t in sorted(out.items())}

    def is_homogeneous(self, raw: bool = False) -> bool:
        degs = {self.ring.degree_of_exponent(e) for e in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Degree of a homogeneous polynomial; None for 0."""
        degs = {self.ring.degree_of_exponent(e) for e in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeMismatch(f"{self!r} is not homogeneous")
        return degs.pop()

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.zero_exponent(), Fraction(0))

    def is_constant(self) -> bool:
        return all(e == self.ring.zero_exponent() for e in self.terms)

    def is_unit(self) -> bool:
        """Units recognized: single term, unit coefficient, inverted support."""
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        dom = self.ring.effective_domain
        if not dom.is_unit(c):
            return False
        return all(x == 0 or self.ring.gen_names[i] in self.ring.inverted
                   for i, x in enumerate(e))

    def unit_inverse(self) -> "Poly":
        if not self.is_unit():
            raise DivisionByNonUnit(f"{self!r} is not a recognized unit")
        (e, c), = self.terms.items()
        dom = self.ring.effective_domain
        inv_c = dom.divide(Fraction(1), c)
        return Poly(self.ring, {tuple(-x for x in e): inv_c})

    def divided_by_unit(self, unit: "Poly") -> "Poly":
        return self * unit.unit_inverse()

    def min_p_valuation(self, p: int):
        """Smallest nu_p over the coefficients; infinity for the zero poly."""
        from .scalars import INFINITY
        return min((p_valuation_fraction(c, p) for c in self.terms.values()),
                   default=INFINITY)

    def map_coefficients(self, fn, ring=None) -> "Poly":
        ring = ring or self.ring
        return Poly(ring, {e: Fraction(fn(c)) for e, c in self.terms.items()})


def _normalize_terms(ring: GradedRingSpec, terms) -> dict:
    """Eliminate defined generators, reduce coefficients, drop zeros."""
    if ring.is_zero_ring:
        return {}
    out: dict = {}
    stack = [(tuple(e), Fraction(c)) for e, c in terms.items() if c != 0]
    while stack:
        exp, coeff = stack.pop()
        if any(exp[i] >= k for i, k in ring.nilpotence.items()):
            continue
        hit = next((i for i, e in enumerate(exp) if e != 0 and i in ring.rewrites), None)
        if hit is None:
            c = ring._norm_coeff(coeff)
            if c:
                s = out.get(exp, 0) + c
                s = ring._norm_coeff(s) if s else s
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
            continue
        power = exp[hit]
        if power < 0:
            raise UnsupportedPresentation(
                f"negative power of rewritten generator {ring.gen_names[hit]!r}")
        rest = tuple(0 if i == hit else e for i, e in enumerate(exp))
        image = ring.rewrites[hit]
        # multiply image**power into the remaining monomial
        expanded = {rest: coeff}
        for _ in range(power):
            nxt: dict = {}
            for e1, c1 in expanded.items():
                for e2, c2 in image.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    nxt[e] = nxt.get(e, 0) + c1 * c2
            expanded = nxt
        stack.extend(expanded.items())
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- ring maps ----------------------------------------------------------------

def poly_map(a: Poly, assignment: dict, target: GradedRingSpec) -> Poly:
    """Apply the ring map sending each generator to assignment[name].

    The assignment must be degree-preserving and send inverted generators to
    recognized units of the target.
    """
    ring = a.ring
    images = {}
    for name, img in assignment.items():
        i = ring.index[name]
        if isinstance(img, (int, Fraction)):
            img = target.const(img)
        if not img.is_zero() and img.degree() != ring.gen_degrees[i]:
            raise DegreeMismatch(
                f"image of {name} has degree {img.degree()}, expected {ring.gen_degrees[i]}")
        images[i] = img
    result = target.zero()
    for exp, coeff in a.terms.items():
        term = target.const(coeff)
        for i, e in enumerate(exp):
            if e == 0:
                continue
            img = images.get(i)
            if img is None:
                raise InputError(f"no image assigned for generator {ring.gen_names[i]!r}")
            if e < 0:
                if not img.is_unit():
                    raise ImageOfInvertedNotUnit(
                        f"image of inverted {ring.gen_names[i]!r} is not a unit")
                term = term * (img.unit_inverse() ** (-e))
            else:
                term = term * (img ** e)
        result = result + term
    return result


def identity_assignment(ring: GradedRingSpec, target: GradedRingSpec | None = None) -> dict:
    target = target or ring
    return {name: target.gen(name) for name in ring.gen_names
            if ring.index[name] not in ring.rewrites}


# -- polynomial string grammar --------------------------------------------------
#
#   poly   := term (('+' | '-') term)*
#   term   := coef ('*' factor)* | factor ('*' factor)*
#   factor := gen ('^' int)?
#   coef   := int ('/' int)?

_TOKEN = re.compile(r"\s*(?:(?P<num>-?\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*^()]))")


def _tokenize(s: str):
    pos = 0
    out = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            if s[pos:].strip() == "":
                break
            raise InputError(f"bad polynomial syntax near {s[pos:pos+12]!r}")
        pos = m.end()
        if m.group("num"):
            out.append(("num", Fraction(m.group("num"))))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    return out


def parse_poly(ring: GradedRingSpec, s: str, raw: bool = False) -> Poly:
    """Parse `coef*gen^exp*...` terms joined by + and -."""
    toks = _tokenize(s)
    n = len(ring.gen_names)
    terms: dict = {}
    i = 0
    sign = Fraction(1)
    if not toks:
        return Poly(ring, {}, raw=raw)
    if toks[0][0] == "op" and toks[0][1] in "+-":
        sign = Fraction(1) if toks[0][1] == "+" else Fraction(-1)
        i = 1

    def flush(exp, coeff):
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coeff

    while i < len(toks):
        coeff = sign
        exp = [0] * n
        saw_factor = False
        expect_factor = True
        while i < len(toks):
            kind, val = toks[i]
            if kind == "op" and val in "+-":
                break
            if kind == "num":
                coeff *= val
                saw_factor = True
                i += 1
            elif kind == "name":
                if val not in ring.index:
                    raise InputError(f"unknown generator {val!r}")
                power = 1
                if i + 1 < len(toks) and toks[i + 1] == ("op", "^"):
                    j = i + 2
                    if j >= len(toks):
                        raise InputError(f"dangling exponent in {s!r}")
                    k2, v2 = toks[j]
                    neg = False
                    if k2 == "op" and v2 == "-":
                        neg = True
                        j += 1
                        if j >= len(toks):
                            raise InputError(f"dangling exponent in {s!r}")
                        k2, v2 = toks[j]
                    if k2 != "num" or v2.denominator != 1:
                        raise InputError("exponent must be an integer")
                    power = -int(v2) if neg else int(v2)
                    i = j + 1
                else:
                    i += 1
                exp[ring.index[val]] += power
                saw_factor = True
            elif kind == "op" and val == "*":
                i += 1
            else:
                raise InputError(f"unexpected token {val!r}")
        if not saw_factor:
            raise InputError(f"empty term in {s!r}")
        flush(exp, coeff)
        if i < len(toks):
            sign = Fraction(1) if toks[i][1] == "+" else Fraction(-1)
            i += 1
            if i == len(toks):
                raise InputError(f"dangling sign in {s!r}")
    for exp in terms:
        for k, e in enumerate(exp):
            if e < 0 and ring.gen_names[k] not in ring.inverted:
                raise InputError(f"negative power of non-inverted {ring.gen_names[k]!r}")
    return Poly(ring, terms, raw=raw)


def format_poly(p: Poly) -> str:
    """Inverse of parse_poly, deterministic term order."""
    if not p.terms:
        return "0"
    ring = p.ring
    bits = []
    for exp in sorted(p.terms, key=lambda e: (ring.degree_of_exponent(e), e)):
        c = p.terms[exp]
        factors = []
        for i, e in enumerate(exp):
            if e == 0:
                continue
            factors.append(ring.gen_names[i] if e == 1 else f"{ring.gen_names[i]}^{e}")
        if not factors:
            body = str(c)
        elif abs(c) == 1:
            body = "*".join(factors)
            if c < 0:
                body = "-" + body
        else:
            body = "*".join([str(c)] + factors)
        bits.append(body)
    out = bits[0]
    for b in bits[1:]:
        out += " - " + b[1:] if b.startswith("-") else " + " + b
    return out
