"""The group algebra Q(zeta_m)[Z/N] of the cyclic group generated by delta.

An element is kept as a sparse map (k, e) -> rational meaning the sum of
c * zeta_m^e * delta^k.  The zeta part is left unreduced during products
(it is an element of the group ring of Z/m, which maps onto Q(zeta_m)),
and reduced modulo the cyclotomic polynomial only when coefficients are
compared or read out.  This keeps products of idempotent systems cheap.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping

from .cyclotomic import CyclotomicElement, reduce_exponent_counts, trace_to_Q, zeta
from .poly import Poly, cyclotomic_coeffs
from .residue import divisors

__all__ = [
    "GroupAlgebraElement",
    "delta",
    "one",
    "scalar",
    "eps_units_sum",
    "eps",
    "eta",
    "eps_tilde",
    "apply_poly",
    "cyclotomic_in_delta",
]


class GroupAlgebraElement:
    __slots__ = ("N", "m", "terms", "den")

    def __init__(self, N: int, terms: Mapping[tuple[int, int], object] = (), m: int = 1):
        if N < 1 or m < 1:
            raise ValueError("group order and cyclotomic level must be positive")
        acc: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
        for (k, e), c in dict(terms).items():
            acc[(k % N, e % m)] += Fraction(c)
        den = lcm(*(c.denominator for c in acc.values())) if acc else 1
        self._set(N, m, {key: int(c * den) for key, c in acc.items() if c}, den)

    def _set(self, N: int, m: int, nums: dict[tuple[int, int], int], den: int) -> None:
        g = den
        for v in nums.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            nums = {key: v // g for key, v in nums.items()}
            den //= g
        self.N, self.m, self.terms, self.den = N, m, nums, den

    @classmethod
    def _raw(cls, N: int, m: int, nums: dict[tuple[int, int], int], den: int):
        obj = cls.__new__(cls)
        obj._set(N, m, {key: v for key, v in nums.items() if v}, den)
        return obj

    @classmethod
    def from_coefficients(cls, N: int, coeffs) -> GroupAlgebraElement:
        """Build sum_k coeffs[k] delta^k; entries may be rational or cyclotomic."""
        m = 1
        for c in coeffs:
            if isinstance(c, CyclotomicElement):
                m = lcm(m, c.n)
        terms: dict[tuple[int, int], Fraction] = {}
        for k, c in enumerate(coeffs):
            if isinstance(c, CyclotomicElement):
                c = c.lift(m)
                for e, v in enumerate(c.coeffs):
                    if v:
                        terms[(k, e)] = v
            elif c:
                terms[(k, 0)] = Fraction(c)
        return cls(N, terms, m)

    def lift(self, m: int) -> GroupAlgebraElement:
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"cannot lift level {self.m} to {m}")
        step = m // self.m
        return GroupAlgebraElement._raw(
            self.N, m, {(k, e * step): c for (k, e), c in self.terms.items()}, self.den)

    def _align(self, other: GroupAlgebraElement):
        if not isinstance(other, GroupAlgebraElement):
            raise TypeError(f"cannot combine with {type(other).__name__}")
        if other.N != self.N:
            raise ValueError(f"group orders differ: {self.N} vs {other.N}")
        m = lcm(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = scalar(self.N, other)
        a, b = self._align(other)
        den = lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        terms = {key: v * fa for key, v in a.terms.items()}
        for key, v in b.terms.items():
            terms[key] = terms.get(key, 0) + v * fb
        return GroupAlgebraElement._raw(a.N, a.m, terms, den)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgebraElement._raw(
            self.N, self.m, {k: -c for k, c in self.terms.items()}, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c0 = Fraction(other)
            return GroupAlgebraElement._raw(
                self.N, self.m, {k: c * c0.numerator for k, c in self.terms.items()},
                self.den * c0.denominator)
        if isinstance(other, CyclotomicElement):
            return self * GroupAlgebraElement.from_coefficients(self.N, [other])
        a, b = self._align(other)
        N, m = a.N, a.m
        acc: dict[tuple[int, int], int] = defaultdict(int)
        bt = list(b.terms.items())
        for (k1, e1), c1 in a.terms.items():
            for (k2, e2), c2 in bt:
                acc[((k1 + k2) % N, (e1 + e2) % m)] += c1 * c2
        return GroupAlgebraElement._raw(N, m, acc, a.den * b.den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GroupAlgebraElement:
        out, base = one(self.N), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _reduced(self) -> dict[int, list[int]]:
        """k -> integer coordinates in Q(zeta_m) (over the common denominator)."""
        by_k: dict[int, list[int]] = {}
        for (k, e), c in self.terms.items():
            row = by_k.get(k)
            if row is None:
                row = by_k[k] = [0] * self.m
            row[e] += c
        out = {}
        for k, counts in by_k.items():
            nums = reduce_exponent_counts(self.m, counts) if self.m > 1 else counts
            if any(nums):
                out[k] = nums
        return out

    def coefficient(self, k: int) -> CyclotomicElement:
        nums = self._reduced().get(k % self.N)
        if nums is None:
            return CyclotomicElement(self.m, [])
        return CyclotomicElement._raw(self.m, list(nums), self.den)

    def coefficients(self) -> list[CyclotomicElement]:
        return [self.coefficient(k) for k in range(self.N)]

    def is_zero(self) -> bool:
        return not self._reduced()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = scalar(self.N, other)
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # equality is decided after reduction

    def __repr__(self) -> str:
        parts = []
        for k in range(self.N):
            c = self.coefficient(k)
            if not c.is_zero():
                parts.append(f"({c!r})*d^{k}")
        return " + ".join(parts) if parts else "0"


def scalar(N: int, c) -> GroupAlgebraElement:
    return GroupAlgebraElement(N, {(0, 0): Fraction(c)})


def one(N: int) -> GroupAlgebraElement:
    return scalar(N, 1)


def delta(N: int, k: int = 1) -> GroupAlgebraElement:
    return GroupAlgebraElement(N, {(k, 0): 1})


def eps(N: int, a: int) -> GroupAlgebraElement:
    """(1/N) sum_i zeta_N^{a i} delta^{N-i}: projector onto the zeta_N^a eigenspace."""
    return GroupAlgebraElement(
        N, {((N - i) % N, a * i % N): Fraction(1, N) for i in range(N)}, N)


def eta(N: int, D: int) -> GroupAlgebraElement:
    """(1/N) sum_i Tr(zeta_D^i) delta^{N-i}, with the trace from Q(zeta_D) to Q."""
    if D < 1 or N % D:
        raise ValueError(f"{D} does not divide {N}")
    return GroupAlgebraElement(
        N, {((N - i) % N, 0): trace_to_Q(zeta(D, i)) / N for i in range(N)})


def eps_tilde(N: int, D: int) -> GroupAlgebraElement:
    """(D/N) times the sum of the subgroup generated by delta^D."""
    if D < 1 or N % D:
        raise ValueError(f"{D} does not divide {N}")
    return GroupAlgebraElement(N, {(j * D, 0): Fraction(D, N) for j in range(N // D)})


def apply_poly(P: Poly, x: GroupAlgebraElement) -> GroupAlgebraElement:
    """Evaluate a polynomial with rational coefficients at x."""
    acc = scalar(x.N, 0)
    for c in reversed(P.coeffs):
        acc = acc * x + Fraction(c)
    return acc


def cyclotomic_in_delta(N: int, D: int) -> GroupAlgebraElement:
    """Phi_D(delta), expanded directly."""
    terms = {(j, 0): c for j, c in enumerate(cyclotomic_coeffs(D)) if c}
    return GroupAlgebraElement(N, terms)


def primitive_levels(N: int) -> list[int]:
    return divisors(N)


def eps_units_sum(N: int, D: int) -> GroupAlgebraElement:
    """sum over a in (Z/D)^x of eps(N, a N/D)."""
    step = N // D
    out = scalar(N, 0)
    for a in range(1, D + 1):
        if gcd(a, D) == 1:
            out = out + eps(N, a * step % N)
    return out
