"""Dense univariate polynomials over an arbitrary exact coefficient ring.

Coefficients are stored lowest degree first with trailing zeros stripped.
The ring only needs ``+``, ``-``, ``*`` and a zero test via ``== 0``;
division additionally needs the leading coefficient to be invertible.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .residue import divisors


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, c=1) -> Poly:
        return cls([0] * degree + [c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _coerce(self, other) -> Poly:
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    def __rmul__(self, other):
        return Poly(other * c for c in self.coeffs)

    def __truediv__(self, scalar):
        return Poly(c / scalar for c in self.coeffs)

    def __pow__(self, k: int) -> Poly:
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            c = c if lead == 1 else c / lead
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def map(self, f) -> Poly:
        return Poly(f(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence, var: str = "T") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        else:
            s = f"{c}{'*' + mono if mono else ''}"
        terms.append(s)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


@lru_cache(maxsize=512)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low to high."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {n}")
    num = Poly([-1] + [0] * (n - 1) + [1])
    for d in divisors(n)[:-1]:
        num = num // Poly(cyclotomic_coeffs(d))
    return tuple(int(c) for c in num.coeffs)


def cyclotomic_polynomial(n: int) -> Poly:
    return Poly(cyclotomic_coeffs(n))


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots of a polynomial with rational coefficients."""
    from math import lcm

    cs = [Fraction(c) for c in p.coeffs]
    if not cs:
        raise ValueError("zero polynomial has every root")
    roots: list[Fraction] = []
    while cs and cs[0] == 0:
        cs.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(cs) <= 1:
        return sorted(roots)
    den = lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    a0, an = abs(ints[0]), abs(ints[-1])
    cands = {Fraction(s * u, v) for u in divisors(a0) for v in divisors(an)
             for s in (1, -1)}
    q = Poly(ints)
    roots.extend(r for r in cands if q(r) == 0)
    return sorted(set(roots))
