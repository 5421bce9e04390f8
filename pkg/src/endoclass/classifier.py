"""Endomorphism algebras of the new part of the Jacobian of y^q = f(x), deg f = 3.

Outcomes are derived from the combinatorics of CM types rather than read
off a table.  For the E + E centralizer the type h splits as g1 + g2 with
g1, g2 in T_q; an abelian factor whose CM type has stabilizer H of order t
is isogenous to the t-th power of a CM abelian variety with CM field
E^H, and the two factors are isogenous iff g1 o theta_s = g2 for some s.
The closed-form statement of the classification is kept separately
(``theorem_table``) so that the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Union

from .cm_types import (
    CMType,
    compute_S,
    is_primitive_mult_type,
    has_middle_unit,
    iter_decompositions,
    middle_pair_count,
    mult_type,
    stabilizer,
)
from .curves import invariant_differential_counts
from .cyclotomic import (
    FieldDescriptor,
    cyclotomic_field,
    fixed_subfield,
    generated_subfield,
    quadratic_field,
    zeta,
)
from .residue import euler_phi, is_prime_power, prime_power_parts, unit_values

__all__ = [
    "CMQuadraticExtension",
    "Summand",
    "AlgebraDescriptor",
    "NotCovered",
    "UNKNOWN_EXAMPLE",
    "CENTRALIZER_CASES",
    "EXAMPLE_FORMS",
    "pair_outcome",
    "split_outcomes",
    "split_outcomes_exhaustive",
    "classify_from_centralizer",
    "possible_algebras",
    "theorem_table",
    "case_label",
    "classify_example",
    "known_examples",
    "fermat_triple_equivalent",
    "full_jacobian_algebra",
]

CENTRALIZER_CASES = ("E", "L", "E+E", "Mat2(E)")
EXAMPLE_FORMS = ("generic_transcendental", "x3+1", "x3-x", "x3+x")
UNKNOWN_EXAMPLE = "unknown per the classification's own examples"


class NotCovered(ValueError):
    """The requested combination is outside what the classification determines."""


@dataclass(frozen=True)
class CMQuadraticExtension:
    """An unspecified CM field L with [L : Q(zeta_n)] = 2."""

    base_n: int

    @property
    def degree(self) -> int:
        return 2 * euler_phi(self.base_n)

    @property
    def key(self) -> tuple:
        n = self.base_n // 2 if self.base_n % 4 == 2 else self.base_n
        return ("cm_quadratic_extension", n)

    @property
    def name(self) -> str:
        return f"L (CM, quadratic over Q(zeta_{self.base_n}))"

    def to_json(self) -> dict:
        return {"type": "cm_extension", "n": self.base_n}


Field = Union[FieldDescriptor, CMQuadraticExtension]


@dataclass(frozen=True)
class Summand:
    t: int
    field: Field

    @property
    def name(self) -> str:
        return self.field.name if self.t == 1 else f"Mat_{self.t}({self.field.name})"

    @property
    def sort_key(self) -> tuple:
        return (self.t, repr(self.field.key))


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A finite direct sum of matrix algebras Mat_t(F) over number fields."""

    summands: tuple[Summand, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands",
                           tuple(sorted(self.summands, key=lambda s: s.sort_key)))

    @classmethod
    def of(cls, *parts: tuple[int, Field] | Field) -> AlgebraDescriptor:
        out = []
        for p in parts:
            out.append(Summand(*p) if isinstance(p, tuple) else Summand(1, p))
        return cls(tuple(out))

    @property
    def key(self) -> tuple:
        return tuple((s.t, s.field.key) for s in self.summands)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraDescriptor):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def is_commutative(self) -> bool:
        return all(s.t == 1 for s in self.summands)

    @property
    def is_simple(self) -> bool:
        return len(self.summands) == 1

    @property
    def dimension_over_Q(self) -> int:
        return sum(s.t * s.t * s.field.degree for s in self.summands)

    @property
    def maximal_commutative_dimension(self) -> int:
        """Dimension of a maximal commutative semisimple subalgebra (sum of t [F:Q])."""
        return sum(s.t * s.field.degree for s in self.summands)

    def direct_sum(self, other: AlgebraDescriptor) -> AlgebraDescriptor:
        return AlgebraDescriptor(self.summands + other.summands)

    @property
    def name(self) -> str:
        return " + ".join(s.name for s in self.summands)

    def __repr__(self) -> str:
        return f"AlgebraDescriptor({self.name})"

    def to_json(self) -> dict:
        return {"summands": [{"t": s.t, "field": s.field.to_json()} for s in self.summands],
                "commutative": self.is_commutative}


# ----------------------------------------------------------------- derived outcomes

def _check_q(q: int) -> tuple[int, int]:
    p, r = prime_power_parts(q)
    if (p == 3 and q < 9) or (p == 2 and q < 4):
        raise ValueError(f"q = {q} is outside the range of the classification")
    return p, r


def pair_outcome(g1: CMType, g2: CMType) -> AlgebraDescriptor:
    """End^0 of Y1 x Y2 where Y_i has CM by Q(zeta_q) with CM type g_i."""
    q = g1.N
    st1, st2 = stabilizer(g1), stabilizer(g2)
    twisted = any(g1.compose(s) == g2 for s in unit_values(q))
    F1 = fixed_subfield(q, st1)
    if twisted:
        return AlgebraDescriptor.of((2 * len(st1), F1))
    F2 = fixed_subfield(q, st2)
    return AlgebraDescriptor.of((len(st1), F1), (len(st2), F2))


def _canonical_pair(q: int, g: CMType, h: tuple[int, ...]) -> tuple[CMType, CMType]:
    other = CMType(q, tuple(x - y for x, y in zip(h, g.values)))
    return (g, other) if g.values <= other.values else (other, g)


def split_outcomes(q: int) -> dict[AlgebraDescriptor, int]:
    """Every algebra arising from a splitting h = g1 + g2, with multiplicities.

    Only CM types lying in some twisted family {g : g, g o theta_s in T_q}
    (s in S_q) can have a nontrivial stabilizer or be a twist s != 1 of their
    partner, so those pairs are examined individually; all other pairs give
    E + E and are only counted.  The twist s = 1 (g1 = g2) happens exactly
    when h never equals 1.
    """
    _check_q(q)
    h = mult_type(3, q).values
    special: set[tuple[CMType, CMType]] = set()
    twists = compute_S(q)
    for s in twists.members:
        for g in twists.all_witnesses(s):
            special.add(_canonical_pair(q, g, h))
    k = middle_pair_count(q)
    if k == 0:
        # h never takes the value 1, so g1 = g2 = h/2 is twisted by s = 1
        special.add(_canonical_pair(q, CMType(q, tuple(v // 2 for v in h)), h))
    total = 2 ** (k - 1) if k else 1
    out: dict[AlgebraDescriptor, int] = {}
    for g1, g2 in sorted(special, key=lambda p: (p[0].values, p[1].values)):
        alg = pair_outcome(g1, g2)
        out[alg] = out.get(alg, 0) + 1
    generic = total - len(special)
    if generic > 0:
        E = cyclotomic_field(q)
        alg = AlgebraDescriptor.of(E, E)
        out[alg] = out.get(alg, 0) + generic
    return out


def split_outcomes_exhaustive(q: int, max_pairs: int = 2**14) -> dict[AlgebraDescriptor, int]:
    """The same census by walking every decomposition (small q only)."""
    k = middle_pair_count(q)
    if k and 2 ** (k - 1) > max_pairs:
        raise OverflowError(f"{2 ** (k - 1)} decompositions exceed {max_pairs}")
    out: dict[AlgebraDescriptor, int] = {}
    for d in iter_decompositions(q):
        alg = pair_outcome(d.g1, d.g2)
        out[alg] = out.get(alg, 0) + 1
    return out


def classify_from_centralizer(q: int, case: str) -> list[AlgebraDescriptor]:
    """Possible End^0 given the centralizer of Q(zeta_q) in it."""
    _check_q(q)
    if case not in CENTRALIZER_CASES:
        raise ValueError(f"unknown centralizer case {case!r}")
    h = mult_type(3, q)
    E = cyclotomic_field(q)
    if case in ("E", "L"):
        if not is_primitive_mult_type(h):
            raise ValueError(f"the multiplication type for q = {q} is not primitive")
        return [AlgebraDescriptor.of(E if case == "E" else CMQuadraticExtension(q))]
    if case == "Mat2(E)":
        if has_middle_unit(q):
            raise ValueError(f"centralizer Mat2(E) is impossible for q = {q}")
        if euler_phi(q) != 2:
            raise NotCovered(f"centralizer Mat2(E) for q = {q}")
        # X ~ Y^2 with Y an elliptic curve with CM by E
        return [AlgebraDescriptor.of((2, E))]
    return sorted(split_outcomes(q), key=lambda a: a.key)


def possible_algebras(q: int, galois_s3: bool = False) -> list[AlgebraDescriptor]:
    """Union over all admissible centralizer cases."""
    _check_q(q)
    cases = ["E", "L"]
    if not galois_s3:
        cases.append("E+E")
        if not has_middle_unit(q):
            cases.append("Mat2(E)")
    seen: list[AlgebraDescriptor] = []
    for c in cases:
        for a in classify_from_centralizer(q, c):
            if a not in seen:
                seen.append(a)
    return seen


# ----------------------------------------------------------------- stated classification

def _alpha_field(q: int) -> FieldDescriptor:
    """Q(2 i sin(2 pi / q)) = Q(zeta_q - zeta_q^-1)."""
    return generated_subfield(zeta(q) - zeta(q, -1))


def theorem_table(q: int, galois_s3: bool = False) -> list[tuple[str, AlgebraDescriptor]]:
    """The classification as stated in closed form, labelled by case."""
    p, r = _check_q(q)
    E = cyclotomic_field(q)
    EE = AlgebraDescriptor.of(E, E)
    M2E = AlgebraDescriptor.of((2, E))
    rows = [("1a", AlgebraDescriptor.of(E)),
            ("1b", AlgebraDescriptor.of(CMQuadraticExtension(q)))]
    if galois_s3:
        return rows
    if p >= 5 and q not in (5, 7):
        rows.append(("2a", EE))
    if p == 3 and q >= 27:
        rows += [("2b", EE), ("2b", M2E)]
    if q in (4, 5, 9):
        rows.append(("2c", M2E))
    if q == 7:
        rows.append(("2d", AlgebraDescriptor.of((3, quadratic_field(-7)), E)))
    if q == 8:
        rows.append(("2e", AlgebraDescriptor.of((2, quadratic_field(-1)),
                                                (2, quadratic_field(-2)))))
    if p == 2 and q >= 16:
        rows += [("2f", EE), ("2f", AlgebraDescriptor.of((2, _alpha_field(q)), E))]
    return rows


def _is_concrete_L(q: int, algebra: AlgebraDescriptor) -> bool:
    """A single cyclotomic field Q(zeta_m) that is quadratic over Q(zeta_q)."""
    if len(algebra.summands) != 1 or algebra.summands[0].t != 1:
        return False
    F = algebra.summands[0].field
    if not isinstance(F, FieldDescriptor) or not F.is_full_cyclotomic:
        return False
    return F.degree == 2 * euler_phi(q) and lcm(F.ambient_n, 2) % q == 0


def case_label(q: int, algebra: AlgebraDescriptor) -> str | None:
    """The case of the stated classification that the algebra falls under.

    A concrete cyclotomic field quadratic over Q(zeta_q) counts as case 1b.
    """
    for label, alg in theorem_table(q):
        if alg == algebra:
            return label
    return "1b" if _is_concrete_L(q, algebra) else None


# ----------------------------------------------------------------- explicit curves

def _split_by_involution(q: int, x_order: int, x_power: int,
                         y_order: int, y_power: int) -> AlgebraDescriptor:
    """Outcome when an automorphism commuting with the deck group cuts the
    new part into its invariant part Y1 and a complement Y2."""
    counts = invariant_differential_counts(3, q, x_order, x_power, y_order, y_power)
    g1 = CMType(q, counts)
    h = mult_type(3, q).values
    g2 = CMType(q, tuple(a - b for a, b in zip(h, counts)))
    return pair_outcome(g1, g2)


def _cm_extension_case(N: int, L_level: int) -> AlgebraDescriptor:
    """End^0 = L when a quadratic CM extension L = Q(zeta_{L_level}) of E embeds."""
    if euler_phi(L_level) != 2 * euler_phi(N):
        raise AssertionError("L is not quadratic over Q(zeta_N)")
    if not has_middle_unit(N):
        raise NotCovered(f"N = {N}: the centralizer of Q(zeta_N) is not pinned down")
    if not is_primitive_mult_type(mult_type(3, N)):
        raise NotCovered(f"N = {N}: the multiplication type is not primitive")
    return AlgebraDescriptor.of(cyclotomic_field(L_level))


def classify_example(form: str, N: int) -> AlgebraDescriptor:
    """End^0 of the new part for the explicit families of cubics.

    Raises ``NotCovered`` for combinations the classification does not settle.
    """
    if form not in EXAMPLE_FORMS:
        raise ValueError(f"unknown form {form!r}; choose from {EXAMPLE_FORMS}")
    if N < 2:
        raise ValueError("N must be at least 2")
    if N == 4:
        # every cubic: the new part is isogenous to the square of y^2 = x^3 - x
        return AlgebraDescriptor.of((2, quadratic_field(-1)))
    if N == 3 and form != "generic_transcendental":
        # genus one with CM by the maximal order of Q(zeta_3)
        return AlgebraDescriptor.of(cyclotomic_field(3))
    pp = prime_power_parts(N) if is_prime_power(N) else None

    if form == "generic_transcendental":
        if pp is None:
            raise NotCovered("the generic family is settled for prime powers only")
        return AlgebraDescriptor.of(cyclotomic_field(N))

    if form == "x3+1":
        if N % 3:
            # gamma_3: x -> omega x satisfies T^2 + T + 1, so Q(zeta_{3N}) embeds
            return _cm_extension_case(N, 3 * N)
        if pp and pp[0] == 3:
            # delta_3^2 gamma_3 acts on x^(b-1) dx / y^a by omega^(a + b)
            return _split_by_involution(N, 3, 1, 3, 2)
        raise NotCovered(f"x^3 + 1 with N = {N} is not settled by the classification")

    if form == "x3-x":
        if N % 2 == 0 and N % 3:
            # gamma_2N: (x, y) -> (-x, zeta_2N y) squares to the deck generator
            return _cm_extension_case(N, 2 * N)
        if pp and pp[0] != 2:
            # gamma_2: (x, y) -> (-x, -y)
            return _split_by_involution(N, 2, 1, 2, 1)
        raise NotCovered(f"x^3 - x with N = {N} is not settled by the classification")

    # x^3 + x
    if pp and pp[0] >= 5 and N not in (5, 7):
        return _split_by_involution(N, 2, 1, 2, 1)
    raise NotCovered(f"x^3 + x with N = {N} is not settled by the classification")


def known_examples(label: str, q: int) -> list[str] | str:
    """Forms realizing a case label for q, or UNKNOWN_EXAMPLE."""
    found = []
    targets = [alg for lbl, alg in theorem_table(q) if lbl == label]
    if not targets:
        raise ValueError(f"case {label} does not occur for q = {q}")
    for form in EXAMPLE_FORMS:
        try:
            alg = classify_example(form, q)
        except NotCovered:
            continue
        if alg in targets:
            found.append(form)
    return found or UNKNOWN_EXAMPLE


# ----------------------------------------------------------------- Fermat triples

def fermat_triple_equivalent(t1: Iterable[int], t2: Iterable[int], m: int,
                             up_to_sign: bool = False) -> int | None:
    """Least unit u with u * t1 a permutation of t2 modulo m (or of -t2 when
    ``up_to_sign``), else None."""
    a = [x % m for x in t1]
    b = sorted(x % m for x in t2)
    bneg = sorted(-x % m for x in t2)
    for u in range(1, m):
        if gcd(u, m) != 1:
            continue
        ua = sorted(u * x % m for x in a)
        if ua == b or (up_to_sign and ua == bneg):
            return u
    return None


# ----------------------------------------------------------------- full Jacobian

def full_jacobian_algebra(per_level: dict[int, AlgebraDescriptor]) -> AlgebraDescriptor:
    """Direct sum of the new-part algebras over the levels dividing N.

    Valid when the new parts at different levels share no isogeny factor.
    """
    out = AlgebraDescriptor(())
    for D in sorted(per_level):
        out = out.direct_sum(per_level[D])
    return out
