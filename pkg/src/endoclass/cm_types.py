"""Multiplication types, CM types and their twists on (Z/qZ)^x.

Every function on the units mod N is stored as a tuple indexed by the
ascending list of units, so it serializes directly to a 0/1 string.
Existence questions (the twist set S_q, decompositions of the type, twisted
decompositions) are all systems of XOR equations over GF(2) in the values
g(a), so they are decided by a union-find structure with parities.
Independent brute-force enumerations live next to each solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .residue import is_prime_power, prime_power_parts, unit_values

__all__ = [
    "UnitIndex",
    "unit_index",
    "MultiplicationType",
    "CMType",
    "mult_type",
    "compose",
    "stabilizer",
    "is_primitive",
    "is_primitive_mult_type",
    "admissible_prefix",
    "is_admissible",
    "in_T",
    "enumerate_T",
    "count_T",
    "TwistSet",
    "compute_S",
    "compute_S_bruteforce",
    "expected_S",
    "Decomposition",
    "decompose_h",
    "iter_decompositions",
    "middle_pair_count",
    "twisted_decompositions",
    "twisted_decompositions_bruteforce",
    "decompose_h_twisted",
    "stabilizing_twists",
    "special_function",
    "odd_parity_function",
    "dyadic_function",
    "triadic_function",
    "has_middle_unit",
    "middle_value_exceptions",
]


@dataclass(frozen=True)
class UnitIndex:
    """Ascending units mod N with lookup, negation and multiplication maps."""

    N: int
    units: tuple[int, ...]
    pos: dict[int, int] = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.units)

    def neg(self, i: int) -> int:
        return self.pos[self.N - self.units[i]]

    @lru_cache(maxsize=None)
    def theta(self, s: int) -> tuple[int, ...]:
        """Index permutation i -> index of s * units[i]."""
        N = self.N
        return tuple(self.pos[s * a % N] for a in self.units)


@lru_cache(maxsize=512)
def unit_index(N: int) -> UnitIndex:
    us = unit_values(N)
    return UnitIndex(N, us, {a: i for i, a in enumerate(us)})


class _UnitFunction:
    """Shared behaviour of integer-valued functions on the units mod N."""

    N: int
    values: tuple[int, ...]

    @property
    def index(self) -> UnitIndex:
        return unit_index(self.N)

    def __call__(self, a: int) -> int:
        return self.values[self.index.pos[a % self.N]]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.index.units, self.values))

    def bits(self) -> str:
        return "".join(str(v) for v in self.values)

    def __str__(self) -> str:
        return self.bits()


@dataclass(frozen=True)
class MultiplicationType(_UnitFunction):
    """floor(n a / N) ('dual') or n - 1 - floor(n a / N) ('lie') on units."""

    N: int
    n: int
    convention: str
    values: tuple[int, ...]

    def to_dual(self) -> MultiplicationType:
        if self.convention == "dual":
            return self
        return mult_type(self.n, self.N, "dual")


@dataclass(frozen=True)
class CMType(_UnitFunction):
    """A 0/1 function g on the units with g(a) + g(-a) = 1."""

    N: int
    values: tuple[int, ...]

    def __post_init__(self):
        idx = unit_index(self.N)
        if len(self.values) != idx.size:
            raise ValueError("value vector does not match the unit group")
        if any(v not in (0, 1) for v in self.values):
            raise ValueError("a CM type takes values in {0, 1}")
        for i, v in enumerate(self.values):
            if v + self.values[idx.neg(i)] != 1:
                raise ValueError(
                    f"g(a) + g(-a) != 1 at a = {idx.units[i]} for N = {self.N}")

    @classmethod
    def from_bits(cls, N: int, bits: str) -> CMType:
        return cls(N, tuple(int(c) for c in bits))

    @classmethod
    def from_dict(cls, N: int, d: dict[int, int]) -> CMType:
        return cls(N, tuple(d[a] for a in unit_values(N)))

    def compose(self, s: int) -> CMType:
        return CMType(self.N, _compose_values(self.N, self.values, s))

    def __add__(self, other: CMType) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.values, other.values))


def mult_type(n: int, N: int, convention: str = "dual") -> MultiplicationType:
    if convention not in ("dual", "lie"):
        raise ValueError(f"unknown convention {convention!r}")
    if N < 2 or n < 1:
        raise ValueError("need N >= 2 and n >= 1")
    if n % N == 0:
        raise ValueError(f"N = {N} divides n = {n}: the type is not given by the floor formula")
    vals = tuple(n * a // N for a in unit_values(N))
    if convention == "lie":
        vals = tuple(n - 1 - v for v in vals)
    return MultiplicationType(N, n, convention, vals)


def _compose_values(N: int, values: Sequence[int], s: int) -> tuple[int, ...]:
    perm = unit_index(N).theta(s % N)
    return tuple(values[j] for j in perm)


def compose(f, s: int):
    """f o theta_s, for a CMType, MultiplicationType or (N, values) pair."""
    if isinstance(f, CMType):
        return f.compose(s)
    if isinstance(f, MultiplicationType):
        return MultiplicationType(f.N, f.n, f.convention, _compose_values(f.N, f.values, s))
    N, values = f
    return _compose_values(N, values, s)


def stabilizer(f) -> frozenset[int]:
    """Units s with f o theta_s = f."""
    N, vals = f.N, f.values
    return frozenset(s for s in unit_values(N) if _compose_values(N, vals, s) == vals)


def is_primitive(f) -> bool:
    N, vals = f.N, f.values
    return all(_compose_values(N, vals, s) != vals for s in unit_values(N) if s != 1)


def is_primitive_mult_type(h: MultiplicationType) -> bool:
    return is_primitive(h)


# ----------------------------------------------------------------- admissibility

def admissible_prefix(q: int) -> list[int]:
    """Units a with 1 <= a < q/3, where members of T_q must vanish."""
    return [a for a in unit_values(q) if 3 * a < q]


def is_admissible(g: CMType) -> bool:
    return all(g(a) == 0 for a in admissible_prefix(g.N))


in_T = is_admissible


class _ParitySystem:
    """Union-find over GF(2) variables with an extra node fixed to 0."""

    def __init__(self, size: int):
        self.size = size
        self.zero = size
        self.parent = list(range(size + 1))
        self.parity = [0] * (size + 1)  # value(x) xor value(parent(x))
        self.ok = True

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root, acc = x, 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root, (self.parity[path[0]] if path else 0)

    def relate(self, x: int, y: int, c: int) -> bool:
        """Impose value(x) xor value(y) = c."""
        if not self.ok:
            return False
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            if px ^ py != c:
                self.ok = False
            return self.ok
        if ry == self.zero:
            rx, ry, px, py = ry, rx, py, px
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ c
        return True

    def fix(self, x: int, v: int) -> bool:
        return self.relate(x, self.zero, v)

    def free_roots(self) -> list[int]:
        roots = {self.find(x)[0] for x in range(self.size)}
        return sorted(r for r in roots if r != self.find(self.zero)[0])

    def solutions(self, limit: int | None = None) -> Iterator[tuple[int, ...]]:
        if not self.ok:
            return
        free = self.free_roots()
        if limit is not None and 2 ** len(free) > limit:
            raise OverflowError(
                f"{2 ** len(free)} solutions exceed the enumeration limit {limit}")
        zero_root = self.find(self.zero)[0]
        info = [self.find(x) for x in range(self.size)]
        for choice in itertools.product((0, 1), repeat=len(free)):
            root_val = dict(zip(free, choice))
            root_val[zero_root] = 0
            yield tuple(root_val[r] ^ p for r, p in info)


def _antisymmetric_system(N: int) -> _ParitySystem:
    idx = unit_index(N)
    sysm = _ParitySystem(idx.size)
    for i in range(idx.size):
        j = idx.neg(i)
        if i < j:
            sysm.relate(i, j, 1)
    return sysm


def _T_system(q: int) -> _ParitySystem:
    idx = unit_index(q)
    sysm = _antisymmetric_system(q)
    for a in admissible_prefix(q):
        sysm.fix(idx.pos[a], 0)
    return sysm


def middle_pair_count(q: int) -> int:
    """Number of pairs {a, -a} of units with q/3 < a < 2q/3."""
    return sum(1 for a in unit_values(q) if q < 3 * a and 2 * a < q)


def count_T(q: int) -> int:
    return 2 ** middle_pair_count(q)


def enumerate_T(q: int, limit: int | None = 2**20) -> list[CMType]:
    return [CMType(q, v) for v in _T_system(q).solutions(limit)]


# ----------------------------------------------------------------- twist set

@dataclass(frozen=True)
class TwistSet:
    """S_q = {s != 1 : g and g o theta_s both lie in T_q for some g}."""

    q: int
    members: tuple[int, ...]
    witnesses: dict[int, CMType]
    free_pairs: dict[int, int]

    def unique(self, s: int) -> bool:
        return self.free_pairs[s] == 0

    def all_witnesses(self, s: int, limit: int = 2**16) -> list[CMType]:
        sysm = _twist_system(self.q, s)
        return [CMType(self.q, v) for v in sysm.solutions(limit)]


def _twist_system(q: int, s: int) -> _ParitySystem:
    idx = unit_index(q)
    sysm = _T_system(q)
    for a in admissible_prefix(q):
        sysm.fix(idx.pos[s * a % q], 0)
    return sysm


def compute_S(q: int) -> TwistSet:
    """Decide membership of every s != 1 by constraint propagation."""
    members, wit, free = [], {}, {}
    for s in unit_values(q):
        if s == 1:
            continue
        sysm = _twist_system(q, s)
        if not sysm.ok:
            continue
        members.append(s)
        wit[s] = CMType(q, next(sysm.solutions()))
        free[s] = len(sysm.free_roots())
    return TwistSet(q, tuple(members), wit, free)


def stabilizing_twists(q: int) -> tuple[int, ...]:
    """Units s != 1 fixing some member of T_q; empty iff all of T_q is primitive."""
    idx = unit_index(q)
    out = []
    for s in unit_values(q):
        if s == 1:
            continue
        sysm = _T_system(q)
        perm = idx.theta(s)
        for i in range(idx.size):
            if not sysm.relate(i, perm[i], 0):
                break
        if sysm.ok:
            out.append(s)
    return tuple(out)


def compute_S_bruteforce(q: int, max_pairs: int = 20) -> frozenset[int]:
    """S_q by enumerating every g in T_q (vectorized over bitmasks)."""
    k = middle_pair_count(q)
    if k > max_pairs:
        raise OverflowError(f"{2**k} members of T_q exceed the brute-force limit")
    units = unit_values(q)
    reps = [a for a in units if q < 3 * a and 2 * a < q]
    low = set(admissible_prefix(q))
    masks = np.arange(2**k, dtype=np.uint64)

    def g_values(x: int) -> np.ndarray:
        """g(x) for every enumerated g, as a 0/1 array."""
        if x in low:
            return np.zeros(masks.shape, dtype=bool)
        if q - x in low:
            return np.ones(masks.shape, dtype=bool)
        if x in reps:
            return ((masks >> np.uint64(reps.index(x))) & np.uint64(1)).astype(bool)
        return ~(((masks >> np.uint64(reps.index(q - x))) & np.uint64(1)).astype(bool))

    out = set()
    for s in units:
        if s == 1:
            continue
        alive = np.ones(masks.shape, dtype=bool)
        for a in low:
            alive &= ~g_values(s * a % q)
            if not alive.any():
                break
        if alive.any():
            out.add(s)
    return frozenset(out)


def expected_S(q: int) -> frozenset[int] | None:
    """Closed-form twist set for the prime powers where one is known."""
    if not is_prime_power(q):
        return None
    p, r = prime_power_parts(q)
    if p >= 5:
        return frozenset({2, (q + 1) // 2})
    if p == 3 and r >= 2:
        return frozenset({2, (q + 1) // 2, q // 3 - 1, 2 * q // 3 - 1})
    if p == 2 and r >= 4:
        return frozenset({q // 2 - 1})
    return None


# ----------------------------------------------------------------- decompositions

@dataclass(frozen=True)
class Decomposition:
    """An unordered pair {g1, g2} in T_q with g1 + g2 equal to the type."""

    g1: CMType
    g2: CMType

    @property
    def q(self) -> int:
        return self.g1.N

    @property
    def twists(self) -> tuple[int, ...]:
        """Units s with g1 o theta_s = g2."""
        q, a, b = self.q, self.g1.values, self.g2.values
        return tuple(s for s in unit_values(q) if _compose_values(q, a, s) == b)

    @property
    def stabilizers(self) -> tuple[frozenset[int], frozenset[int]]:
        return stabilizer(self.g1), stabilizer(self.g2)


def _decomposition_system(q: int) -> _ParitySystem:
    return _T_system(q)


def iter_decompositions(q: int, n: int = 3) -> Iterator[Decomposition]:
    """Every unordered pair; g2 is forced by g1, so T_q is walked once."""
    if n != 3:
        raise ValueError("decompositions are defined for the n = 3 type")
    h = mult_type(3, q).values
    for v in _decomposition_system(q).solutions():
        w = tuple(x - y for x, y in zip(h, v))
        if any(x not in (0, 1) for x in w):
            continue
        if v <= w:
            yield Decomposition(CMType(q, v), CMType(q, w))


def decompose_h(q: int, n: int = 3, max_pairs: int = 2**20) -> list[Decomposition]:
    k = middle_pair_count(q)
    if k and 2 ** (k - 1) > max_pairs:
        raise OverflowError(f"{2 ** (k - 1)} decompositions exceed the limit {max_pairs}")
    return list(iter_decompositions(q, n))


def _twisted_system(q: int, s: int) -> _ParitySystem:
    idx = unit_index(q)
    h = mult_type(3, q).values
    sysm = _antisymmetric_system(q)
    perm = idx.theta(s % q)
    for i, hv in enumerate(h):
        j = perm[i]
        if hv == 0:
            sysm.fix(i, 0)
            sysm.fix(j, 0)
        elif hv == 2:
            sysm.fix(i, 1)
            sysm.fix(j, 1)
        else:
            sysm.relate(i, j, 1)
        if not sysm.ok:
            break
    return sysm


def twisted_decompositions(q: int, s: int | None = None,
                           limit: int = 2**16) -> dict[int, list[CMType]]:
    """Antisymmetric g with h = g + g o theta_s, for one s or for every unit s."""
    if s is not None and gcd(s, q) != 1:
        raise ValueError(f"{s} is not a unit modulo {q}")
    svals = [s % q] if s is not None else list(unit_values(q))
    out = {}
    for t in svals:
        sysm = _twisted_system(q, t)
        sols = [CMType(q, v) for v in sysm.solutions(limit)] if sysm.ok else []
        if sols or s is not None:
            out[t] = sols
    return out


def decompose_h_twisted(q: int, s: int) -> list[CMType]:
    """All g with h = g + g o theta_s, for a single unit s."""
    return twisted_decompositions(q, s)[s % q]


def twisted_decompositions_bruteforce(q: int, s: int,
                                      only_T: bool = False) -> list[CMType]:
    """Literal search over all antisymmetric g (or over T_q when only_T)."""
    idx = unit_index(q)
    h = mult_type(3, q).values
    half = [i for i in range(idx.size) if idx.units[i] < q - idx.units[i]]
    if only_T:
        cands = (g.values for g in enumerate_T(q))
    else:
        def gen():
            for bits in itertools.product((0, 1), repeat=len(half)):
                v = [0] * idx.size
                for i, b in zip(half, bits):
                    v[i], v[idx.neg(i)] = b, 1 - b
                yield tuple(v)
        cands = gen()
    out = []
    for v in cands:
        tw = _compose_values(q, v, s)
        if all(a + b == c for a, b, c in zip(v, tw, h)):
            out.append(CMType(q, v))
    return out


# ----------------------------------------------------------------- special functions

def odd_parity_function(q: int) -> CMType:
    """0 below q/3, parity of a on the middle band, 1 above 2q/3 (q odd)."""
    if q % 2 == 0 or q < 5:
        raise ValueError("needs an odd modulus q >= 5")
    return CMType(q, tuple(0 if 3 * a < q else (1 if 3 * a > 2 * q else a % 2)
                           for a in unit_values(q)))


def dyadic_function(q: int) -> CMType:
    """0 on units below q/2 and 1 above, for q = 2^r >= 8."""
    p, r = prime_power_parts(q)
    if p != 2 or r < 3:
        raise ValueError("needs q = 2^r with r >= 3")
    return CMType(q, tuple(0 if 2 * a < q else 1 for a in unit_values(q)))


def triadic_function(q: int) -> CMType:
    """On the middle band: 0 when a = 1 mod 3 and 1 when a = 2 mod 3 (q = 3^r >= 9)."""
    p, r = prime_power_parts(q)
    if p != 3 or r < 2:
        raise ValueError("needs q = 3^r with r >= 2")
    vals = []
    for a in unit_values(q):
        if 3 * a < q:
            vals.append(0)
        elif 3 * a > 2 * q:
            vals.append(1)
        else:
            vals.append(0 if a % 3 == 1 else 1)
    return CMType(q, tuple(vals))


# ----------------------------------------------------------------- middle values

def has_middle_unit(N: int, n: int = 3) -> bool:
    """Whether some unit a has floor(n a / N) = 1."""
    lo = -(-N // n)  # ceil(N/n)
    for a in range(lo, N):
        if n * a >= 2 * N:
            return False
        if gcd(a, N) == 1:
            return True
    return False


def middle_value_exceptions(limit: int, n: int = 3) -> list[int]:
    return [N for N in range(2, limit + 1) if not has_middle_unit(N, n)]


_SPECIAL = {"odd_parity": odd_parity_function, "dyadic": dyadic_function,
            "triadic": triadic_function}


def special_function(q: int, kind: str) -> CMType:
    """One of the three explicit members of T_q by name; membership is checked."""
    try:
        g = _SPECIAL[kind](q)
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; choose from {sorted(_SPECIAL)}") from None
    if not is_admissible(g):
        raise AssertionError(f"{kind} function for q = {q} is not in T_q")
    return g
