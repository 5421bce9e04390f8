"""Arithmetic in the unit group (Z/NZ)^x.

Units are always represented by their canonical representative in
[1, N-1]; 0 never represents a unit.  Hot loops elsewhere in the package
work with plain ints, the small value types here are the public surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil, floor, gcd

__all__ = [
    "Modulus",
    "UnitResidue",
    "CoprimeInterval",
    "factorize",
    "euler_phi",
    "divisors",
    "is_prime_power",
    "prime_power_parts",
    "units",
    "unit_values",
    "ord_mod",
    "ord",
    "cyclic_subgroup",
    "coprime_interval",
    "negate",
    "mul",
    "is_subgroup",
]


@lru_cache(maxsize=4096)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{p: e}`` (trial division)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    return dict(_factorize(n))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in _factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in _factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def is_prime_power(n: int) -> bool:
    return n > 1 and len(_factorize(n)) == 1


def prime_power_parts(q: int) -> tuple[int, int]:
    """Return ``(p, r)`` with ``q = p**r``; raise if q is not a prime power."""
    f = _factorize(q) if q > 1 else ()
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    return f[0]


def _as_int(N: int | Modulus) -> int:
    return N.N if isinstance(N, Modulus) else int(N)


@dataclass(frozen=True)
class Modulus:
    """The modulus N >= 2 together with its cached factorization."""

    N: int

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"modulus must be >= 2, got {self.N}")

    @cached_property
    def factorization(self) -> dict[int, int]:
        return factorize(self.N)

    @property
    def phi(self) -> int:
        return euler_phi(self.N)

    @property
    def is_prime_power(self) -> bool:
        return len(self.factorization) == 1

    def __int__(self) -> int:
        return self.N


@dataclass(frozen=True, order=True)
class UnitResidue:
    """A unit of Z/NZ, stored by its representative in [1, N-1]."""

    value: int
    modulus: int

    def __post_init__(self):
        N = self.modulus
        if N < 2:
            raise ValueError(f"modulus must be >= 2, got {N}")
        v = self.value % N
        if gcd(v, N) != 1:
            raise ValueError(f"{self.value} is not a unit modulo {N}")
        object.__setattr__(self, "value", v)

    def _check(self, other: UnitResidue) -> None:
        if other.modulus != self.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __mul__(self, other):
        if isinstance(other, int):
            return UnitResidue(self.value * other, self.modulus)
        if isinstance(other, UnitResidue):
            self._check(other)
            return UnitResidue(self.value * other.value, self.modulus)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> UnitResidue:
        return UnitResidue(self.modulus - self.value, self.modulus)

    def __pow__(self, k: int) -> UnitResidue:
        return UnitResidue(pow(self.value, k, self.modulus), self.modulus)

    def inverse(self) -> UnitResidue:
        return UnitResidue(pow(self.value, -1, self.modulus), self.modulus)

    def order(self) -> int:
        return ord_mod(self.value, self.modulus)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} mod {self.modulus}"


@lru_cache(maxsize=1024)
def unit_values(N: int) -> tuple[int, ...]:
    """Ascending tuple of the representatives of (Z/NZ)^x."""
    if N < 2:
        raise ValueError(f"modulus must be >= 2, got {N}")
    return tuple(a for a in range(1, N) if gcd(a, N) == 1)


def units(N: int | Modulus) -> list[UnitResidue]:
    N = _as_int(N)
    return [UnitResidue(a, N) for a in unit_values(N)]


def ord_mod(s: int, N: int) -> int:
    """Multiplicative order of the unit ``s`` modulo ``N``."""
    s %= N
    if gcd(s, N) != 1:
        raise ValueError(f"{s} is not a unit modulo {N}")
    if N == 2:
        return 1
    x, t = s, 1
    while x != 1:
        x = x * s % N
        t += 1
    return t


def ord(s: UnitResidue) -> int:  # noqa: A001 - mirrors the mathematical name
    return ord_mod(s.value, s.modulus)


def cyclic_subgroup(s: UnitResidue | int, N: int | None = None) -> frozenset[int]:
    """The subgroup generated by ``s``, as a set of representatives."""
    if isinstance(s, UnitResidue):
        s, N = s.value, s.modulus
    if N is None:
        raise TypeError("modulus required for int generators")
    s %= N
    if gcd(s, N) != 1:
        raise ValueError(f"{s} is not a unit modulo {N}")
    out, x = {1}, s
    while x not in out:
        out.add(x)
        x = x * s % N
    return frozenset(out)


def is_subgroup(H, N: int) -> bool:
    H = {int(h) % N for h in H}
    if not H or any(gcd(h, N) != 1 for h in H):
        return False
    return all(a * b % N in H for a in H for b in H)


@dataclass(frozen=True)
class CoprimeInterval:
    """The set {z : lower <= z <= upper, gcd(z, N) = 1}; bounds are exact.

    ``open_lower``/``open_upper`` turn the corresponding inequality strict,
    giving the open variant (x, y)_Z.
    """

    lower: Fraction
    upper: Fraction
    modulus: int
    open_lower: bool = False
    open_upper: bool = False

    def enumerate(self) -> list[int]:
        lo, hi = Fraction(self.lower), Fraction(self.upper)
        start = floor(lo) + 1 if self.open_lower else ceil(lo)
        stop = ceil(hi) - 1 if self.open_upper else floor(hi)
        N = self.modulus
        return [z for z in range(start, stop + 1) if gcd(z, N) == 1]

    def __iter__(self):
        return iter(self.enumerate())

    def __contains__(self, z: int) -> bool:
        lo, hi = Fraction(self.lower), Fraction(self.upper)
        if self.open_lower and not z > lo or not z >= lo:
            return False
        if self.open_upper and not z < hi or not z <= hi:
            return False
        return gcd(z, self.modulus) == 1


def coprime_interval(x, y, N: int | Modulus, *, open_lower=False,
                     open_upper=False) -> list[int]:
    """Sorted integers z in [x, y] (rational bounds) with gcd(z, N) = 1."""
    x, y = Fraction(x), Fraction(y)
    if x > y:
        raise ValueError(f"empty bounds: {x} > {y}")
    return CoprimeInterval(x, y, _as_int(N), open_lower, open_upper).enumerate()


def negate(a: UnitResidue) -> UnitResidue:
    return -a


def mul(a: UnitResidue, s: UnitResidue) -> UnitResidue:
    """The map theta_s applied to a."""
    return a * s
