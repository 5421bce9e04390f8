"""Geometry of the superelliptic curves y^N = f(x).

Genus bookkeeping, an explicit basis of holomorphic differentials with a
valuation-based holomorphicity test, the depressed form of a cubic, and the
cyclic extension of the deck group that a cubic admits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .cyclotomic import zeta
from .cm_types import MultiplicationType
from .poly import Poly, rational_roots
from .residue import divisors, euler_phi, unit_values

__all__ = [
    "new_part_dimension",
    "riemann_hurwitz_genus",
    "genus_decomposition_audit",
    "differential_basis",
    "differential_order_at_infinity",
    "is_holomorphic",
    "h_from_basis",
    "invariant_differential_counts",
    "depressed_cubic",
    "AutDescriptor",
    "normalizer_classification",
    "normalizer_classification_general",
    "lambda_special_values",
]


def new_part_dimension(N: int, n: int | None = None,
                       multiplicities: Sequence[int] | None = None) -> int:
    """phi(N) (|R| - 2) / 2, R being the branch points of the degree-N cover.

    A root of multiplicity m branches iff N does not divide m, and infinity
    branches iff N does not divide deg f.  Without multiplicities f is
    taken squarefree of degree n.
    """
    if multiplicities is None:
        if n is None:
            raise TypeError("give n or the root multiplicities")
        multiplicities = [1] * n
    deg = sum(multiplicities)
    R = sum(1 for m in multiplicities if m % N) + (1 if deg % N else 0)
    if R < 2:
        return 0
    return euler_phi(N) * (R - 2) // 2


def riemann_hurwitz_genus(N: int, n: int) -> int:
    """Genus of y^N = f(x) with f squarefree of degree n."""
    g0 = gcd(N, n)
    two_g_minus_2 = -2 * N + n * (N - 1) + (N - g0)
    if two_g_minus_2 % 2:
        raise ArithmeticError("odd Euler characteristic")
    return two_g_minus_2 // 2 + 1


def genus_decomposition_audit(N: int, n: int = 3) -> bool:
    """The new parts over all levels D | N, D > 1, add up to the genus."""
    total = sum(new_part_dimension(D, n) for D in divisors(N) if D > 1)
    return total == riemann_hurwitz_genus(N, n)


def differential_order_at_infinity(n: int, N: int, a: int, b: int) -> Fraction:
    """Order of x^(b-1) dx / y^a at each point over infinity."""
    e = N // gcd(N, n)
    ord_x = -e
    ord_y = Fraction(n * ord_x, N)
    return ord_x * (b - 1) + (ord_x - 1) - a * ord_y


def is_holomorphic(n: int, N: int, a: int, b: int) -> bool:
    """Valuation test for x^(b-1) dx / y^a on y^N = f, f squarefree, f(0) != 0.

    Over a root of f the cover is totally ramified: x - alpha has order N,
    y order 1 and dx order N - 1, so the order there is N - 1 - a.
    """
    if N - 1 - a < 0 or b < 1:
        return False
    return differential_order_at_infinity(n, N, a, b) >= 0


def differential_basis(n: int, N: int) -> list[tuple[int, int]]:
    """Pairs (a, b): x^(b-1) dx / y^a, 1 <= a < N, 1 <= b <= ceil(n a / N) - 1.

    For a coprime to N (or gcd(n, N) = 1) the bound equals floor(n a / N).
    """
    if n % N == 0:
        raise ValueError(f"N = {N} divides n = {n}")
    return [(a, b) for a in range(1, N) for b in range(1, -(-n * a // N))]


def h_from_basis(n: int, N: int) -> MultiplicationType:
    """Dimensions of the zeta_N^a-eigenspaces of holomorphic differentials on units.

    The form with index a spans the eigenspace of eigenvalue zeta_N^a under
    the inverse pullback of y -> zeta_N y; forms are kept by the valuation test.
    """
    if n % N == 0:
        raise ValueError(f"N = {N} divides n = {n}")
    counts = []
    for a in unit_values(N):
        b_max = n * a // N + 2  # search a little past any possible bound
        counts.append(sum(1 for b in range(1, b_max + 1) if is_holomorphic(n, N, a, b)))
    return MultiplicationType(N, n, "dual", tuple(counts))


def invariant_differential_counts(n: int, N: int, x_order: int, x_power: int,
                                  y_order: int, y_power: int) -> tuple[int, ...]:
    """Per unit a, how many basis forms with index a are fixed by
    (x, y) -> (zeta_{x_order}^{x_power} x, zeta_{y_order}^{y_power} y).

    The form x^(b-1) dx / y^a picks up zeta^(x_power b / x_order - y_power a / y_order).
    """
    out = []
    for a in unit_values(N):
        c = 0
        for b in range(1, -(-n * a // N)):
            if (x_power * b * y_order - y_power * a * x_order) % (x_order * y_order) == 0:
                c += 1
        out.append(c)
    return tuple(out)


def depressed_cubic(A0, B0, C0):
    """Shift x -> x - b, b = A0/3, in x^3 + A0 x^2 + B0 x + C0.

    Returns (B0', C0', b) with f(x - b) = x^3 + B0' x + C0'.  Works over
    any exact ring in which 3 is invertible (rationals, polynomials, ...).
    """
    A0, B0, C0 = (Fraction(v) if isinstance(v, int) else v for v in (A0, B0, C0))
    b = A0 / 3
    return B0 - A0 * A0 / 3, C0 - A0 * B0 / 3 + 2 * A0 * A0 * A0 / 27, b


@dataclass(frozen=True)
class AutDescriptor:
    """A cyclic group of automorphisms of y^N = x^3 + B0 x + C0 containing the deck group."""

    order: int
    generator_x: str
    generator_y: str
    case: str

    def __str__(self) -> str:
        return f"Z/{self.order} generated by (x, y) -> ({self.generator_x}, {self.generator_y})"


def normalizer_classification(B0, C0, N: int) -> AutDescriptor:
    """The cyclic group generated by the deck group and the x-scalings of the cubic."""
    if gcd(N, 3) != 1 or N in (2, 4):
        raise ValueError("needs gcd(N, 3) = 1 and N not in {2, 4}")
    B0, C0 = Fraction(B0), Fraction(C0)
    if 4 * B0**3 + 27 * C0**2 == 0:
        raise ValueError("the cubic has a repeated root")
    if B0 and C0:
        return AutDescriptor(N, "x", f"zeta_{N} y", "generic")
    if B0 == 0:
        return AutDescriptor(3 * N, "omega x", f"zeta_{N} y", "B0=0")
    return AutDescriptor(2 * N, "-x", f"zeta_{2 * N} y", "C0=0")


def normalizer_classification_general(A0, B0, C0, N: int) -> AutDescriptor:
    B1, C1, _ = depressed_cubic(Fraction(A0), Fraction(B0), Fraction(C0))
    return normalizer_classification(B1, C1, N)


def lambda_special_values() -> dict:
    """Values of lambda where x(x - 1)(x - lambda) acquires extra automorphisms.

    Computed by depressing the cubic with coefficients in Q[lambda].
    """
    lam = Poly([Fraction(0), Fraction(1)])
    A0 = -(lam + 1)
    B0 = lam
    C0 = Poly([])
    B1, C1, shift = depressed_cubic(A0, B0, C0)
    squarefree_excluded = {Fraction(0), Fraction(1)}
    c_roots = [r for r in rational_roots(C1) if r not in squarefree_excluded]
    lead = B1.coeffs[-1]
    b_monic = B1 / lead
    b_roots = [r for r in rational_roots(B1) if r not in squarefree_excluded]
    disc = b_monic[1] ** 2 - 4 * b_monic[0]
    omega = zeta(6)  # (1 + sqrt(-3)) / 2
    return {
        "B0_prime": B1,
        "C0_prime": C1,
        "shift": shift,
        "order_2N": c_roots,
        "order_3N_minpoly": b_monic,
        "order_3N_rational_roots": b_roots,
        "order_3N_discriminant": disc,
        "order_3N_roots": [omega, omega.conjugate()],
        "order_3N_roots_check": all(b_monic(r) == 0 for r in (omega, omega.conjugate())),
    }
