"""Exact arithmetic in cyclotomic fields Q(zeta_n) and their subfields.

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1) with
rational coordinates (an integer numerator vector over a common positive
denominator).  Binary operations between different levels coerce both
operands to the lcm level, so equality is always decided exactly.
"""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping

import numpy as np

from .poly import Poly, cyclotomic_coeffs, format_poly
from .residue import euler_phi, factorize, is_subgroup, unit_values

log = logging.getLogger(__name__)

__all__ = [
    "CyclotomicElement",
    "FieldDescriptor",
    "zeta",
    "rational",
    "galois_apply",
    "trace_to_Q",
    "minimal_polynomial",
    "gauss_period",
    "fixed_subfield",
    "generated_subfield",
    "cyclotomic_field",
    "quadratic_field",
    "ramanujan_sum",
    "power_table",
    "reduce_exponent_counts",
]


@lru_cache(maxsize=256)
def power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the coordinates of zeta_n^e for 0 <= e < n."""
    phi = euler_phi(n)
    cyc = cyclotomic_coeffs(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(phi):
                cur[k] -= top * cyc[k]
    return tuple(rows)


@lru_cache(maxsize=256)
def _power_matrix(n: int) -> np.ndarray:
    return np.array(power_table(n), dtype=np.int64).reshape(n, euler_phi(n))


def reduce_exponent_counts(n: int, counts) -> list[int]:
    """Coordinates of sum_e counts[e] zeta_n^e for an integer vector of length n.

    Uses int64 matrix arithmetic when that is provably overflow free and
    falls back to Python integers otherwise.
    """
    table = _power_matrix(n)
    c = np.asarray(counts, dtype=object)
    bound = int(np.abs(table).max(initial=0)) * sum(abs(int(v)) for v in c)
    if bound < 2**62:
        return [int(v) for v in np.asarray(c, dtype=np.int64) @ table]
    rows = power_table(n)
    out = [0] * euler_phi(n)
    for e, v in enumerate(c):
        if v:
            for k, t in enumerate(rows[e]):
                if t:
                    out[k] += int(v) * t
    return out


def _mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=4096)
def ramanujan_sum(n: int, i: int) -> int:
    """Trace of zeta_n^i from Q(zeta_n) to Q."""
    g = gcd(n, i % n) if i % n else n
    m = n // g
    return _mobius(m) * euler_phi(n) // euler_phi(m)


class CyclotomicElement:
    __slots__ = ("n", "_num", "_den")

    def __init__(self, n: int, coeffs: Iterable = ()):
        if n < 1:
            raise ValueError(f"cyclotomic level must be >= 1, got {n}")
        cs = [Fraction(c) for c in coeffs]
        phi = euler_phi(n)
        den = lcm(*(c.denominator for c in cs)) if cs else 1
        nums = [int(c * den) for c in cs]
        if len(nums) > phi:
            counts = [0] * n
            for e, v in enumerate(nums):
                counts[e % n] += v
            nums = reduce_exponent_counts(n, counts)
        nums += [0] * (phi - len(nums))
        self._set(n, nums, den)

    def _set(self, n: int, nums: list[int], den: int) -> None:
        g = den
        for v in nums:
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            nums = [v // g for v in nums]
            den //= g
        self.n = n
        self._num = tuple(nums)
        self._den = den

    @classmethod
    def _raw(cls, n: int, nums: list[int], den: int = 1) -> CyclotomicElement:
        obj = cls.__new__(cls)
        if den < 0:
            nums, den = [-v for v in nums], -den
        obj._set(n, nums, den)
        return obj

    @classmethod
    def from_exponents(cls, n: int, terms: Mapping[int, object]) -> CyclotomicElement:
        """Build sum c * zeta_n^e from a mapping e -> c with rational c."""
        fr = {e % n: Fraction(c) for e, c in terms.items()}
        den = lcm(*(c.denominator for c in fr.values())) if fr else 1
        counts = [0] * n
        for e, c in fr.items():
            counts[e] += int(c * den)
        return cls._raw(n, reduce_exponent_counts(n, counts), den)

    # ----- basic accessors
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self._den) for v in self._num)

    @property
    def phi(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    # ----- level changes
    def lift(self, m: int) -> CyclotomicElement:
        """The same number viewed in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed level {self.n} into level {m}")
        step = m // self.n
        counts = [0] * m
        for i, v in enumerate(self._num):
            if v:
                counts[i * step % m] += v
        return CyclotomicElement._raw(m, reduce_exponent_counts(m, counts), self._den)

    def _pair(self, other):
        if isinstance(other, CyclotomicElement):
            if other.n == self.n:
                return self, other
            m = lcm(self.n, other.n)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            return self, rational(other, self.n)
        return None

    # ----- arithmetic
    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        den = lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return CyclotomicElement._raw(
            a.n, [x * fa + y * fb for x, y in zip(a._num, b._num)], den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement._raw(self.n, [-v for v in self._num], self._den)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CyclotomicElement._raw(
                self.n, [v * other.numerator for v in self._num],
                self._den * other.denominator)
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        n = a.n
        counts = [0] * n
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        counts[(i + j) % n] += x * y
        return CyclotomicElement._raw(
            n, reduce_exponent_counts(n, counts), a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[0] * pair[1].inverse()

    def __rtruediv__(self, other):
        return rational(other, self.n) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = rational(1, self.n), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> CyclotomicElement:
        """Inverse via the product of the other Galois conjugates over the norm."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if self.is_rational():
            return rational(1 / self.to_rational(), self.n)
        prod = rational(1, self.n)
        for a in unit_values(self.n) if self.n > 1 else ():
            if a != 1:
                prod = prod * self.galois(a)
        norm = (prod * self).to_rational()
        return prod * (1 / norm)

    # ----- Galois structure
    def galois(self, a: int) -> CyclotomicElement:
        """Apply zeta_n -> zeta_n^a."""
        n = self.n
        if gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit modulo {n}")
        counts = [0] * n
        for i, v in enumerate(self._num):
            if v:
                counts[i * a % n] += v
        return CyclotomicElement._raw(n, reduce_exponent_counts(n, counts), self._den)

    def conjugate(self) -> CyclotomicElement:
        return self.galois(-1)

    def trace(self) -> Fraction:
        n = self.n
        total = sum(v * ramanujan_sum(n, i) for i, v in enumerate(self._num) if v)
        return Fraction(total, self._den)

    def _normalized_trace(self) -> Fraction:
        return self.trace() / euler_phi(self.n)

    def embed_complex(self, digits: int = 15) -> complex:
        """Value under the embedding zeta_n -> exp(2 pi i / n)."""
        if digits <= 15:
            z = [cmath.exp(2j * cmath.pi * k / self.n) for k in range(self.phi)]
            return sum(v * zk for v, zk in zip(self._num, z)) / self._den
        import mpmath

        with mpmath.workdps(digits + 5):
            tot = mpmath.mpc(0)
            for k, v in enumerate(self._num):
                if v:
                    tot += v * mpmath.expjpi(mpmath.mpf(2 * k) / self.n)
            return tot / self._den

    # ----- comparison
    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a._den == b._den and a._num == b._num

    def __hash__(self) -> int:
        # The normalized trace does not depend on the level.
        return hash(("cyclo", self._normalized_trace()))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "1" if k == 0 else (f"z{self.n}" if k == 1 else f"z{self.n}^{k}")
                terms.append(f"{c}*{mono}" if mono != "1" else f"{c}")
        return " + ".join(terms) if terms else "0"


def rational(c, n: int = 1) -> CyclotomicElement:
    c = Fraction(c)
    phi = euler_phi(n)
    return CyclotomicElement._raw(n, [c.numerator] + [0] * (phi - 1), c.denominator)


def zeta(n: int, k: int = 1) -> CyclotomicElement:
    return CyclotomicElement.from_exponents(n, {k % n: 1})


def galois_apply(a: int, x: CyclotomicElement) -> CyclotomicElement:
    return x.galois(a)


def trace_to_Q(x: CyclotomicElement) -> Fraction:
    return x.trace()


def conjugate_orbit(x: CyclotomicElement) -> list[CyclotomicElement]:
    """Distinct Galois conjugates of x, in order of the acting unit."""
    seen: list[CyclotomicElement] = []
    for a in unit_values(x.n) if x.n > 1 else (1,):
        y = x.galois(a) if x.n > 1 else x
        if all(y != z for z in seen):
            seen.append(y)
    return seen


def minimal_polynomial(x: CyclotomicElement) -> Poly:
    """Monic minimal polynomial over Q, as the product over distinct conjugates."""
    p = Poly([rational(1, x.n)])
    for c in conjugate_orbit(x):
        p = p * Poly([-c, rational(1, x.n)])
    return Poly(c.to_rational() for c in p.coeffs)


def gauss_period(n: int, H: Iterable[int]) -> CyclotomicElement:
    return CyclotomicElement.from_exponents(n, {h % n: 1 for h in set(H)})


def _subgroup_trace(beta: CyclotomicElement, H) -> CyclotomicElement:
    tot = rational(0, beta.n)
    for h in sorted(H):
        tot = tot + beta.galois(h)
    return tot


def _squarefree_part(m: int) -> int:
    sign = -1 if m < 0 else 1
    m = abs(m)
    out = 1
    for p, e in factorize(m).items() if m > 1 else ():
        if e % 2:
            out *= p
    return sign * out


def _quadratic_invariants(min_poly: Poly) -> tuple[int, int]:
    """(fundamental discriminant, squarefree radicand) of a quadratic field."""
    c, b, _ = (Fraction(v) for v in min_poly.coeffs)
    disc = b * b - 4 * c
    if disc == 0:
        raise ValueError("polynomial is not separable")
    d = _squarefree_part(disc.numerator * disc.denominator)
    return (d if d % 4 == 1 else 4 * d), d


@dataclass(frozen=True, eq=False)
class FieldDescriptor:
    """A subfield of Q(zeta_n), identified by the subgroup of units fixing it.

    Degree-two fields additionally carry their fundamental discriminant and
    squarefree radicand, and compare equal across different ambient levels.
    ``ambient_n`` may be None for a quadratic field given only abstractly.
    """

    ambient_n: int | None
    subgroup: frozenset[int] | None
    degree: int
    generator: CyclotomicElement | None
    min_poly: tuple[Fraction, ...]
    quadratic_discriminant: int | None = None
    radicand: int | None = None
    fallback_used: bool = field(default=False, compare=False)

    @property
    def key(self) -> tuple:
        if self.degree <= 2:
            return ("quadratic", self.quadratic_discriminant)
        n, H = self.ambient_n, self.subgroup
        if n % 4 == 2:
            n //= 2
            H = frozenset(h % n for h in H)
        return ("subfield", n, tuple(sorted(H)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldDescriptor):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def is_full_cyclotomic(self) -> bool:
        return self.subgroup is not None and len(self.subgroup) == 1

    @property
    def name(self) -> str:
        if self.degree == 1:
            return "Q"
        if self.degree == 2:
            return f"Q(sqrt({self.radicand}))"
        n = self.ambient_n if self.ambient_n % 4 != 2 else self.ambient_n // 2
        if self.is_full_cyclotomic:
            return f"Q(zeta_{n})"
        gens = ",".join(str(h) for h in _generators(self.subgroup, self.ambient_n))
        return f"Q(zeta_{self.ambient_n})^<{gens}>"

    def to_json(self) -> dict:
        if self.degree == 1:
            return {"type": "cyclotomic", "n": 1}
        if self.degree == 2:
            return {"type": "quadratic", "disc": self.quadratic_discriminant,
                    "radicand": self.radicand}
        if self.is_full_cyclotomic:
            n = self.ambient_n if self.ambient_n % 4 != 2 else self.ambient_n // 2
            return {"type": "cyclotomic", "n": n}
        return {"type": "period", "n": self.ambient_n,
                "subgroup": sorted(self.subgroup),
                "minpoly": [str(c) for c in self.min_poly]}

    def __repr__(self) -> str:
        return f"FieldDescriptor({self.name}, degree={self.degree})"

    def min_poly_str(self) -> str:
        return format_poly(self.min_poly)


def _generators(H: frozenset[int], n: int) -> list[int]:
    gens: list[int] = []
    span = {1}
    for h in sorted(H):
        if h in span:
            continue
        gens.append(h)
        frontier = set(span)
        while True:
            new = {x * g % n for x in frontier for g in gens} | frontier
            if new == frontier:
                break
            frontier = new
        span = frontier
    return gens or [1]


def _descriptor(n, H, degree, gen, mp, fallback=False) -> FieldDescriptor:
    disc = rad = None
    if degree == 1:
        disc, rad = 1, 1
    elif degree == 2:
        disc, rad = _quadratic_invariants(mp)
    return FieldDescriptor(n, frozenset(H), degree, gen,
                           tuple(Fraction(c) for c in mp.coeffs), disc, rad, fallback)


def fixed_subfield(n: int, H: Iterable[int]) -> FieldDescriptor:
    """The subfield of Q(zeta_n) fixed by zeta -> zeta^h for all h in H.

    The generator is the Gauss period sum_{h in H} zeta^h.  When that period
    has too small a degree (possible for non-squarefree n) a deterministic
    sequence of relative traces of other elements is tried instead.
    """
    H = frozenset(int(h) % n for h in H) or frozenset({1})
    if n > 2 and not is_subgroup(H, n):
        raise ValueError(f"{sorted(H)} is not a subgroup of the units mod {n}")
    degree = euler_phi(n) // len(H)
    if len(H) == 1:
        # the period is zeta_n itself, whose minimal polynomial is Phi_n
        return _descriptor(n, H, degree, zeta(n), Poly(cyclotomic_coeffs(n)))
    gen = gauss_period(n, H)
    mp = minimal_polynomial(gen)
    if mp.degree == degree:
        return _descriptor(n, H, degree, gen, mp)
    log.info("Gauss period for n=%d, H=%s is degenerate; using fallback",
                n, sorted(H))
    z = zeta(n)
    for j in range(1, 65):
        for beta in (z + z * z * j,
                     CyclotomicElement(n, [j**i for i in range(euler_phi(n))])):
            cand = _subgroup_trace(beta, H)
            mp = minimal_polynomial(cand)
            if mp.degree == degree:
                return _descriptor(n, H, degree, cand, mp, fallback=True)
    raise RuntimeError(f"no generator found for the fixed field of {sorted(H)} mod {n}")


def generated_subfield(x: CyclotomicElement) -> FieldDescriptor:
    """The field Q(x), located inside Q(zeta_n) through its stabilizer."""
    n = x.n
    H = frozenset(a for a in unit_values(n) if x.galois(a) == x) if n > 2 else frozenset({1})
    degree = euler_phi(n) // len(H)
    mp = minimal_polynomial(x)
    if mp.degree != degree:
        raise AssertionError("Galois correspondence violated")
    return _descriptor(n, H, degree, x, mp)


def cyclotomic_field(n: int) -> FieldDescriptor:
    return fixed_subfield(n, {1})


def quadratic_field(d: int) -> FieldDescriptor:
    """Q(sqrt(d)) for a squarefree integer d != 1, given abstractly."""
    if d == 1 or _squarefree_part(d) != d:
        raise ValueError(f"{d} is not a squarefree integer other than 1")
    mp = Poly([Fraction(-d), 0, 1])
    disc, rad = _quadratic_invariants(mp)
    return FieldDescriptor(None, None, 2, None, tuple(mp.coeffs), disc, rad)
