"""Dirichlet characters modulo N, generalized Bernoulli numbers B_{1,chi},
and the odd-character expansion of a multiplication type.

A character is stored by its exponent vector on a fixed set of CRT
generators of the unit group; its values live in Q(zeta_m), m being the
exponent of (Z/NZ)^x.  Internally a value is handled as its discrete
logarithm k, meaning chi(a) = zeta_m^k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm

from .cyclotomic import CyclotomicElement, rational, reduce_exponent_counts, zeta
from .residue import divisors, euler_phi, factorize, ord_mod, unit_values

__all__ = [
    "UnitGroup",
    "DirichletCharacter",
    "unit_group",
    "all_characters",
    "odd_characters",
    "bernoulli_b1",
    "bernoulli_b1_is_zero",
    "h_odd_coefficients",
    "S_set",
    "S0_set",
    "T1_set",
    "primitive_by_characters",
    "induced_product_formula_check",
    "VanishingBounds",
    "vanishing_bounds",
    "first_nonempty_S0",
]


def _primitive_root(p: int, e: int) -> int:
    """Smallest primitive root modulo p**e for an odd prime p."""
    m = p**e
    phi = m - m // p
    fac = list(factorize(phi))
    for g in range(2, m):
        if g % p and all(pow(g, phi // r, m) != 1 for r in fac):
            return g
    raise ArithmeticError(f"no primitive root modulo {m}")


def _crt_lift(residue: int, part: int, N: int) -> int:
    """The x mod N with x = residue mod part and x = 1 mod N/part."""
    rest = N // part
    if rest == 1:
        return residue % N
    # x = 1 + rest*t with rest*t = residue - 1 (mod part)
    t = (residue - 1) * pow(rest, -1, part) % part
    return (1 + rest * t) % N


@dataclass(frozen=True)
class UnitGroup:
    """(Z/NZ)^x as a product of cyclic groups with explicit generators."""

    N: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @cached_property
    def logs(self) -> dict[int, tuple[int, ...]]:
        """a -> exponent vector (e_i) with a = prod g_i^{e_i} mod N."""
        N = self.N
        table: dict[int, tuple[int, ...]] = {}
        for exps in itertools.product(*(range(o) for o in self.orders)):
            a = 1 % N
            for g, e in zip(self.generators, exps):
                a = a * pow(g, e, N) % N
            table[a] = exps
        return table


@lru_cache(maxsize=512)
def unit_group(N: int) -> UnitGroup:
    if N < 1:
        raise ValueError(f"modulus must be >= 1, got {N}")
    gens: list[int] = []
    orders: list[int] = []
    for p, e in sorted(factorize(N).items()) if N > 1 else ():
        part = p**e
        if p == 2:
            if e >= 2:
                gens.append(_crt_lift(-1, part, N))
                orders.append(2)
            if e >= 3:
                gens.append(_crt_lift(5, part, N))
                orders.append(2 ** (e - 2))
        else:
            gens.append(_crt_lift(_primitive_root(p, e), part, N))
            orders.append(part - part // p)
    return UnitGroup(N, tuple(gens), tuple(orders))


@dataclass(frozen=True)
class DirichletCharacter:
    """chi with chi(g_i) = zeta_{ord g_i}^{exponents[i]} on the CRT generators."""

    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        G = unit_group(self.modulus)
        if len(self.exponents) != len(G.orders):
            raise ValueError("exponent vector does not match the unit group")
        object.__setattr__(
            self, "exponents",
            tuple(e % o for e, o in zip(self.exponents, G.orders)))

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @property
    def value_level(self) -> int:
        """m such that all values lie in Q(zeta_m)."""
        return self.group.exponent

    def log(self, a: int) -> int | None:
        """k with chi(a) = zeta_m^k, or None when gcd(a, N) > 1."""
        G = self.group
        N = self.modulus
        a %= N
        if N == 1:
            return 0
        if gcd(a, N) != 1:
            return None
        m = G.exponent
        return sum(e * l * (m // o) for e, l, o in
                   zip(self.exponents, G.logs[a], G.orders)) % m

    @cached_property
    def log_table(self) -> dict[int, int]:
        return {a: self.log(a) for a in (unit_values(self.modulus) if self.modulus > 1 else (0,))}

    def __call__(self, a: int) -> CyclotomicElement:
        k = self.log(a)
        m = self.value_level
        if k is None:
            return rational(0, m)
        return zeta(m, k)

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @property
    def parity(self) -> int:
        """0 for even characters, 1 for odd ones."""
        if self.modulus <= 2:
            return 0
        k = self.log(-1)
        return 0 if k == 0 else 1

    def is_odd(self) -> bool:
        return self.parity == 1

    @cached_property
    def order(self) -> int:
        return lcm(*(o // gcd(e, o) for e, o in zip(self.exponents, self.group.orders))) \
            if self.exponents else 1

    def conj(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(-e for e in self.exponents))

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.modulus != self.modulus:
            raise ValueError("characters have different moduli")
        return DirichletCharacter(
            self.modulus, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    @cached_property
    def conductor(self) -> int:
        """Least divisor d of N such that chi is trivial on units = 1 mod d."""
        N = self.modulus
        table = self.log_table
        for d in divisors(N):
            if all(table[a] == 0 for a in table if (a - 1) % d == 0):
                return d
        return N

    def primitive_part(self) -> DirichletCharacter:
        """The primitive character modulo the conductor inducing chi."""
        f = self.conductor
        if f == self.modulus:
            return self
        Gf = unit_group(f)
        m, mf = self.value_level, Gf.exponent
        exps = []
        for g, o in zip(Gf.generators, Gf.orders):
            lift = next(x for x in range(g, g + f * self.modulus, f)
                        if gcd(x, self.modulus) == 1)
            k = self.log(lift)  # chi(lift) = zeta_m^k has order dividing o
            # zeta_m^k = zeta_o^j  <=>  j = k*o/m
            if (k * o) % m:
                raise ArithmeticError("inconsistent primitive part")
            exps.append(k * o // m)
        chi0 = DirichletCharacter(f, tuple(exps))
        assert mf == chi0.value_level
        return chi0

    def __repr__(self) -> str:
        return f"chi_{self.modulus}{list(self.exponents)}"


def all_characters(N: int) -> list[DirichletCharacter]:
    G = unit_group(N)
    return [DirichletCharacter(N, e)
            for e in itertools.product(*(range(o) for o in G.orders))]


def odd_characters(N: int) -> list[DirichletCharacter]:
    return [c for c in all_characters(N) if c.is_odd()]


def _b1_numerator_counts(chi: DirichletCharacter) -> list[int]:
    m = chi.value_level
    counts = [0] * m
    for a, k in chi.log_table.items():
        counts[k] += a
    return counts


def bernoulli_b1(chi: DirichletCharacter) -> CyclotomicElement:
    """(1/N) sum_{a unit} a chi(a), with a taken in [1, N-1]; lies in Q(zeta_m)."""
    m = chi.value_level
    nums = reduce_exponent_counts(m, _b1_numerator_counts(chi))
    return CyclotomicElement._raw(m, nums, chi.modulus)


def bernoulli_b1_is_zero(chi: DirichletCharacter) -> bool:
    m = chi.value_level
    return not any(reduce_exponent_counts(m, _b1_numerator_counts(chi)))


def h_odd_coefficients(n: int, N: int) -> dict[DirichletCharacter, CyclotomicElement]:
    """Coefficients c_chi = (n - chi(n)) B_{1, conj chi} / phi(N) over odd chi.

    With these, sum_chi c_chi chi(a) = floor(n a / N) - (n - 1)/2 on units,
    provided gcd(n, N) = 1.
    """
    if gcd(n, N) != 1:
        raise ValueError("the character expansion needs gcd(n, N) = 1")
    phi = euler_phi(N)
    return {chi: (n - chi(n)) * bernoulli_b1(chi.conj()) / phi
            for chi in odd_characters(N)}


def S_set(N: int) -> list[DirichletCharacter]:
    return odd_characters(N)


def S0_set(N: int) -> list[DirichletCharacter]:
    return [c for c in odd_characters(N) if bernoulli_b1_is_zero(c)]


def T1_set(s: int, N: int) -> list[DirichletCharacter]:
    return [c for c in odd_characters(N) if c.log(s) == 0]


def primitive_by_characters(N: int) -> bool:
    """Character-side primitivity test for floor(n a/N), gcd(n, N) = 1.

    Since chi(n) is a root of unity and n >= 2, n - chi(n) never vanishes,
    so c_chi != 0 exactly when B_{1, conj chi} != 0.  The type is imprimitive
    iff some s != 1 has chi(s) = 1 for every such chi.
    """
    support = [c for c in odd_characters(N) if not bernoulli_b1_is_zero(c.conj())]
    for s in unit_values(N):
        if s != 1 and all(c.log(s) == 0 for c in support):
            return False
    return True


def induced_product_formula_check(chi: DirichletCharacter) -> bool:
    """B_{1,chi} == B_{1,chi0} prod_{p | N, p not dividing f} (1 - chi0(p))."""
    chi0 = chi.primitive_part()
    f = chi0.modulus
    lhs = bernoulli_b1(chi)
    if f == 1:
        # classical B_1 = 1/2 for the trivial character; the identity then fails
        rhs = rational(Fraction(1, 2), lhs.n)
    else:
        rhs = bernoulli_b1(chi0)
    for p in factorize(chi.modulus):
        if f % p:
            rhs = rhs * (1 - chi0(p))
    return lhs == rhs


@dataclass(frozen=True)
class VanishingBounds:
    """Exact quantities bounding the share of odd characters with B_{1,chi} = 0."""

    N: int
    s_ratio: Fraction
    u: dict[int, int]
    v: dict[int, Fraction]
    w_terms: dict[int, Fraction]

    @property
    def v_sum(self) -> Fraction:
        return sum(self.v.values(), Fraction(0))

    @property
    def w(self) -> Fraction:
        return sum(self.w_terms.values(), Fraction(0))

    @property
    def chain_holds(self) -> bool:
        return self.s_ratio <= self.v_sum <= self.w


def _u_value(p: int, Ni: int) -> int:
    """Number of odd characters mod Ni that are trivial on p."""
    if Ni <= 2:
        return 0
    o = ord_mod(p, Ni)
    x = 1
    for _ in range(o):
        x = x * p % Ni
        if x == Ni - 1:
            return 0
    return euler_phi(Ni) // (2 * o)


def vanishing_bounds(N: int) -> VanishingBounds:
    f = factorize(N)
    if len(f) < 2:
        raise ValueError(f"{N} is a prime power; the bound needs two primes")
    phi = euler_phi(N)
    u, v, w = {}, {}, {}
    for p, e in f.items():
        Ni = N // p**e
        u[p] = _u_value(p, Ni)
        v[p] = Fraction(2 * u[p], phi)
        w[p] = Fraction(1, euler_phi(p**e) * ord_mod(p, Ni))
    S = odd_characters(N)
    S0 = [c for c in S if bernoulli_b1_is_zero(c)]
    return VanishingBounds(N, Fraction(len(S0), len(S)), u, v, w)


def first_nonempty_S0(limit: int = 300) -> int | None:
    for N in range(3, limit + 1):
        if S0_set(N):
            return N
    return None
