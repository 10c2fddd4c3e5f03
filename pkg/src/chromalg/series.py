"""Truncated power series in formal variables with graded-polynomial
coefficients.

A series is exact in total variable degree <= trunc and unspecified above;
every operation takes the minimum of its inputs' truncations. Formal
variables carry degree -1, so a homogeneous series has a well-defined
internal degree (coefficient degree minus variable degree).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    LeadingCoefficientNotUnit,
    NonzeroConstantTerm,
    RingMismatch,
)
from .rings import GradedRingSpec, Poly

VAR_NAMES = ("t",), ("x", "y"), ("x", "y", "z")


class TruncSeries:
    """Sparse truncated series: exponent tuple -> nonzero Poly coefficient."""

    __slots__ = ("ring", "nvars", "trunc", "terms")

    def __init__(self, ring: GradedRingSpec, nvars: int, trunc: int, terms=None):
        self.ring = ring
        self.nvars = nvars
        self.trunc = trunc
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if sum(e) > trunc or (hasattr(c, "is_zero") and c.is_zero()):
                    continue
                if isinstance(c, (int, Fraction)):
                    c = ring.const(c)
                    if c.is_zero():
                        continue
                self.terms[tuple(e)] = c

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(ring, nvars, trunc) -> "TruncSeries":
        return TruncSeries(ring, nvars, trunc)

    @staticmethod
    def variable(ring, nvars, trunc, i=0) -> "TruncSeries":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return TruncSeries(ring, nvars, trunc, {e: ring.one()})

    # -- protocol --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.nvars == other.nvars and self.ring == other.ring
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0 + O(deg>{})".format(self.trunc)
        names = (VAR_NAMES[self.nvars - 1] if self.nvars <= 3
                 else tuple(f"t{i}" for i in range(self.nvars)))
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
            c = repr(self.terms[e])
            c = f"({c})" if ("+" in c or "-" in c[1:]) else c
            bits.append(f"{c}*{mono}" if mono else c)
        return " + ".join(bits) + f" + O(deg>{self.trunc})"

    def _check(self, other):
        if self.nvars != other.nvars:
            raise RingMismatch("variable count mismatch")
        if self.ring != other.ring:
            raise RingMismatch("series over different rings")

    def coefficient(self, exp) -> Poly:
        return self.terms.get(tuple(exp), self.ring.zero())

    def constant_term(self) -> Poly:
        return self.coefficient((0,) * self.nvars)

    def truncate(self, D: int) -> "TruncSeries":
        return TruncSeries(self.ring, self.nvars, min(D, self.trunc),
                           {e: c for e, c in self.terms.items() if sum(e) <= D})

    def is_zero(self) -> bool:
        return not self.terms

    # -- linear structure --------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        D = min(self.trunc, other.trunc)
        terms = {e: c for e, c in self.terms.items() if sum(e) <= D}
        for e, c in other.terms.items():
            if sum(e) > D:
                continue
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return TruncSeries(self.ring, self.nvars, D, terms)

    def __neg__(self):
        return TruncSeries(self.ring, self.nvars, self.trunc,
                           {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncSeries":
        """Multiply by a Poly or exact scalar."""
        if isinstance(c, (int, Fraction)):
            c = self.ring.const(c)
        return TruncSeries(self.ring, self.nvars, self.trunc,
                           {e: q * c for e, q in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scale(other)
        self._check(other)
        D = min(self.trunc, other.trunc)
        a = sorted(self.terms.items(), key=lambda kv: sum(kv[0]))
        b = sorted(other.terms.items(), key=lambda kv: sum(kv[0]))
        out: dict = {}
        for e1, c1 in a:
            d1 = sum(e1)
            if d1 > D:
                break
            for e2, c2 in b:
                if d1 + sum(e2) > D:
                    break
                e = tuple(i + j for i, j in zip(e1, e2))
                prod = c1 * c2
                s = out.get(e)
                s = prod if s is None else s + prod
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return TruncSeries(self.ring, self.nvars, D, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative series powers unsupported")
        result = TruncSeries(self.ring, self.nvars, self.trunc,
                             {(0,) * self.nvars: self.ring.one()})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- composition ---------------------------------------------------------------

    def substitute(self, inners, trunc=None) -> "TruncSeries":
        """Evaluate self(g_1, ..., g_n) for inner series with no constant term."""
        if len(inners) != self.nvars:
            raise ValueError(f"expected {self.nvars} inner series")
        tgt = inners[0]
        for g in inners:
            if g.nvars != tgt.nvars or g.ring != tgt.ring:
                raise RingMismatch("inner series disagree")
            if not g.constant_term().is_zero():
                raise NonzeroConstantTerm("inner series must vanish at the origin")
        D = min([self.trunc, trunc if trunc is not None else self.trunc]
                + [g.trunc for g in inners])
        ring = tgt.ring
        one = TruncSeries(ring, tgt.nvars, D, {(0,) * tgt.nvars: ring.one()})
        powers = [{0: one} for _ in inners]

        def power(i, k):
            store = powers[i]
            if k not in store:
                store[k] = power(i, k - 1) * inners[i].truncate(D)
            return store[k]

        result = TruncSeries.zero(ring, tgt.nvars, D)
        for e in sorted(self.terms, key=sum):
            if sum(e) > D:
                break
            prod = None
            for i, k in enumerate(e):
                if k == 0:
                    continue
                prod = power(i, k) if prod is None else prod * power(i, k)
            coeff = self.terms[e]
            if self.ring != ring:
                coeff = ring.const(1) * _coerce_poly(coeff, ring)
            piece = (one if prod is None else prod).scale(coeff)
            result = result + piece
        return result

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """f(g(t)) for one-variable f."""
        if self.nvars != 1:
            raise ValueError("compose is for one-variable series")
        return self.substitute([g])

    def reverse(self) -> "TruncSeries":
        """Compositional inverse of a one-variable series t*unit + O(t^2)."""
        if self.nvars != 1:
            raise ValueError("reverse is for one-variable series")
        if not self.constant_term().is_zero():
            raise NonzeroConstantTerm("cannot revert a series with constant term")
        lead = self.coefficient((1,))
        if not lead.is_unit():
            raise LeadingCoefficientNotUnit(f"leading coefficient {lead!r} is not a unit")
        inv = lead.unit_inverse()
        D = self.trunc
        t = TruncSeries.variable(self.ring, 1, D)
        g = t.scale(inv)
        for _ in range(D + 1):
            err = t - self.compose(g)
            if err.is_zero():
                break
            g = g + err.scale(inv)
        return g

    def derivative(self, i: int = 0) -> "TruncSeries":
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = tuple(k - 1 if j == i else k for j, k in enumerate(e))
            out_c = c * e[i]
            prev = out.get(e2)
            out[e2] = out_c if prev is None else prev + out_c
        return TruncSeries(self.ring, self.nvars, max(self.trunc - 1, 0), out)

    def integrate(self) -> "TruncSeries":
        """Termwise t-integral of a one-variable series; needs Q-coefficients."""
        if self.nvars != 1:
            raise ValueError("integrate is for one-variable series")
        out = {}
        for (k,), c in self.terms.items():
            out[(k + 1,)] = c * Fraction(1, k + 1)
        return TruncSeries(self.ring, 1, self.trunc + 1, out)

    def reciprocal(self) -> "TruncSeries":
        """1/f for f with unit constant term."""
        c0 = self.constant_term()
        if not c0.is_unit():
            raise LeadingCoefficientNotUnit("constant term is not a unit")
        inv0 = c0.unit_inverse()
        D = self.trunc
        u = TruncSeries(self.ring, self.nvars, D, {(0,) * self.nvars: inv0})
        one = TruncSeries(self.ring, self.nvars, D, {(0,) * self.nvars: self.ring.one()})
        for _ in range(D + 1):
            err = one - self * u
            if err.is_zero():
                break
            u = u + err.scale(inv0)
        return u

    # -- bookkeeping ------------------------------------------------------------------

    def internal_degrees(self) -> set:
        """Set of internal degrees carried by the stored terms."""
        return {c.degree() - sum(e) for e, c in self.terms.items()}

    def substitute_zero(self, i: int) -> "TruncSeries":
        """Set variable i to zero, keeping the remaining variables in place."""
        out = {e: c for e, c in self.terms.items() if e[i] == 0}
        return TruncSeries(self.ring, self.nvars, self.trunc, out)

    def embed(self, nvars: int, positions) -> "TruncSeries":
        """View the series in a larger variable set, variable j -> positions[j]."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * nvars
            for j, k in enumerate(e):
                e2[positions[j]] = k
            out[tuple(e2)] = c
        return TruncSeries(self.ring, nvars, self.trunc, out)

    def map_coefficients(self, fn, ring=None) -> "TruncSeries":
        ring = ring or self.ring
        out = {}
        for e, c in self.terms.items():
            q = fn(c)
            if not q.is_zero():
                out[e] = q
        return TruncSeries(ring, self.nvars, self.trunc, out)


def _coerce_poly(c: Poly, ring: GradedRingSpec) -> Poly:
    """Reinterpret a coefficient in a ring with the same generator names."""
    if c.ring.gen_names != ring.gen_names:
        raise RingMismatch("coefficient rings have different generators")
    return Poly(ring, dict(c.terms))


def change_ring(s: TruncSeries, ring: GradedRingSpec) -> TruncSeries:
    """Move a series to another ring with the same generator list."""
    return TruncSeries(ring, s.nvars, s.trunc,
                       {e: _coerce_poly(c, ring) for e, c in s.terms.items()})
