"""Bernoulli numbers, zeta denominators at negative integers, the von
Staudt-Clausen denominator and p-part extraction.

This module is the independent oracle for the order checks on the
one-line-above-the-edge cohomology groups: the expected order of the
degree-k group at p is the p-part of 2 * denominator(zeta(1-k)).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .rings import _is_prime
from .scalars import p_valuation_fraction

_bernoulli_cache: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli(k: int) -> Fraction:
    """B_k with the B_1 = -1/2 convention, via sum_{j<=k} C(k+1, j) B_j = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    while len(_bernoulli_cache) <= k:
        n = len(_bernoulli_cache)
        acc = sum(comb(n + 1, j) * _bernoulli_cache[j] for j in range(n))
        _bernoulli_cache.append(-acc / (n + 1))
    return _bernoulli_cache[k]


def zeta_value(k: int) -> Fraction:
    """zeta(1-k) = -B_k / k for k >= 2 (0 at even negative arguments)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return -bernoulli(k) / k


def zeta_denominator(k: int) -> int:
    """Denominator of zeta(1-k) in lowest terms; the denominator of 0 is 1."""
    return zeta_value(k).denominator


@lru_cache(maxsize=None)
def von_staudt_denominator(k: int) -> int:
    """Product of the primes p with (p-1) | k; equals denominator(B_k) for even k."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")
    out = 1
    for p in range(2, k + 2):
        if _is_prime(p) and k % (p - 1) == 0:
            out *= p
    return out


def expected_ext1_order(p: int, k: int) -> int:
    """p-part of 2 * denominator(zeta(1-k))."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 2:
        raise ValueError("k must be at least 2")
    v = p_valuation_fraction(Fraction(2 * zeta_denominator(k)), p)
    return p ** int(v)
