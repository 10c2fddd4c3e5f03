"""Exact scalar arithmetic over Z, Q, the p-local integers and prime fields.

A p-local scalar is stored as a reduced fraction whose denominator is prime
to p; no p-adic expansions are involved, so every operation is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByNonUnit, DomainMismatch

INFINITY = math.inf


@dataclass(frozen=True)
class Domain:
    """Coefficient domain tag: Z, Q, Z_(p) or F_p."""

    kind: str  # "Z" | "Q" | "Zp" | "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zp", "Fp"):
            raise DomainMismatch(f"unknown domain kind {self.kind!r}")
        if self.kind in ("Zp", "Fp") and (self.p is None or self.p < 2):
            raise DomainMismatch(f"domain {self.kind} needs a prime p")

    def __str__(self):
        return {"Z": "Z", "Q": "Q", "Zp": f"Z_({self.p})", "Fp": f"F_{self.p}"}[self.kind]

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    def contains(self, q: Fraction) -> bool:
        if self.kind == "Q":
            return True
        if self.kind == "Z":
            return q.denominator == 1
        if self.kind == "Zp":
            return q.denominator % self.p != 0
        return q.denominator == 1 and 0 <= q.numerator < self.p

    def normalize(self, q: Fraction) -> Fraction:
        """Canonical representative of q; raises if q is not in the domain."""
        if self.kind == "Fp":
            if q.denominator % self.p == 0:
                raise DivisionByNonUnit(f"{q} has no image in {self}")
            num = q.numerator * pow(q.denominator, -1, self.p) % self.p
            return Fraction(num)
        if not self.contains(q):
            raise DivisionByNonUnit(f"{q} is not an element of {self}")
        return q

    def is_unit(self, q: Fraction) -> bool:
        q = self.normalize(q)
        if q == 0:
            return False
        if self.kind == "Q":
            return True
        if self.kind == "Z":
            return q in (1, -1)
        if self.kind == "Zp":
            return q.numerator % self.p != 0
        return True  # Fp: nonzero is a unit

    def divide(self, a: Fraction, b: Fraction) -> Fraction:
        if not self.is_unit(b):
            raise DivisionByNonUnit(f"{b} is not a unit in {self}")
        if self.kind == "Fp":
            return self.normalize(self.normalize(a) * Fraction(pow(int(self.normalize(b)), -1, self.p)))
        return self.normalize(a / b)

    def rationalized(self) -> "Domain":
        """The domain with torsion-free fractions allowed (log computations)."""
        if self.kind == "Fp":
            raise DomainMismatch(f"{self} has torsion; no rationalization")
        return QQ


ZZ = Domain("Z")
QQ = Domain("Q")


def ZP(p: int) -> Domain:
    return Domain("Zp", p)


def FP(p: int) -> Domain:
    return Domain("Fp", p)


@dataclass(frozen=True)
class Scalar:
    """An exact scalar tagged with its domain, stored in lowest terms."""

    domain: Domain
    num: int
    den: int = 1

    @staticmethod
    def make(domain: Domain, value) -> "Scalar":
        q = domain.normalize(Fraction(value))
        return Scalar(domain, q.numerator, q.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self):
        return f"{self.num}" if self.den == 1 else f"{self.num}/{self.den}"

    def _check(self, other: "Scalar"):
        if not isinstance(other, Scalar):
            raise DomainMismatch(f"expected Scalar, got {type(other).__name__}")
        if other.domain != self.domain:
            raise DomainMismatch(f"{self.domain} vs {other.domain}")

    def __add__(self, other):
        self._check(other)
        return Scalar.make(self.domain, self.fraction + other.fraction)

    def __sub__(self, other):
        self._check(other)
        return Scalar.make(self.domain, self.fraction - other.fraction)

    def __mul__(self, other):
        self._check(other)
        return Scalar.make(self.domain, self.fraction * other.fraction)

    def __truediv__(self, other):
        self._check(other)
        return Scalar.make(self.domain, self.domain.divide(self.fraction, other.fraction))

    def __neg__(self):
        return Scalar.make(self.domain, -self.fraction)

    def is_zero(self) -> bool:
        return self.num == 0

    def is_unit(self) -> bool:
        return self.domain.is_unit(self.fraction)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact arithmetic dispatch; op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def p_valuation_fraction(q: Fraction, p: int):
    """nu_p of an exact fraction; +infinity for zero."""
    if q == 0:
        return INFINITY
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def p_valuation(a: Scalar, p: int):
    """nu_p(a) for a in Z, Q or Z_(p); infinity for a = 0."""
    if a.domain.kind == "Fp":
        raise DomainMismatch("p-valuation is not defined on a prime field")
    if a.domain.kind == "Zp" and a.domain.p != p:
        raise DomainMismatch(f"valuation prime {p} differs from domain prime {a.domain.p}")
    return p_valuation_fraction(a.fraction, p)
