"""Property tests for the invariants the library promises."""

import cmath
from fractions import Fraction
from math import gcd

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from endoclass.characters import all_characters, bernoulli_b1, odd_characters
from endoclass.cm_types import (
    compute_S,
    enumerate_T,
    in_T,
    mult_type,
    stabilizer,
)
from endoclass.curves import depressed_cubic, h_from_basis, normalizer_classification_general
from endoclass.cyclotomic import CyclotomicElement, rational, zeta
from endoclass.poly import Poly
from endoclass.residue import cyclic_subgroup, is_prime_power, ord_mod, unit_values

levels = st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15, 16])
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def cyclotomic_elements(draw, n=None):
    n = n or draw(levels)
    coeffs = draw(st.lists(fractions, min_size=1, max_size=n))
    return CyclotomicElement.from_exponents(n, dict(enumerate(coeffs)))


@st.composite
def same_level(draw, k=3):
    n = draw(levels)
    return [draw(cyclotomic_elements(n)) for _ in range(k)]


@given(same_level())
def test_field_ring_axioms(xs):
    a, b, c = xs
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == rational(0, a.n)


@given(cyclotomic_elements())
def test_inverse_and_embedding(a):
    assume(not a.is_zero())
    assert a * a.inverse() == rational(1, a.n)
    z = cmath.exp(2j * cmath.pi / a.n)
    numeric = sum(complex(c) * z**k for k, c in enumerate(a.coeffs))
    assert abs(a.embed_complex() - numeric) < 1e-6 * (1 + abs(numeric))


@given(same_level(2), st.integers(1, 200))
def test_galois_is_a_ring_map(xs, k):
    a, b = xs
    assume(gcd(k, a.n) == 1)
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)


@given(st.integers(2, 400), st.data())
def test_cyclic_subgroup_closed(N, data):
    s = data.draw(st.sampled_from(unit_values(N)))
    H = cyclic_subgroup(s, N)
    assert len(H) == ord_mod(s, N)
    assert 1 in H and all(a * b % N in H for a in H for b in H)


@given(st.integers(3, 60), st.data())
def test_characters_multiplicative(N, data):
    chi = data.draw(st.sampled_from(all_characters(N)))
    U = unit_values(N)
    a, b = data.draw(st.sampled_from(U)), data.draw(st.sampled_from(U))
    assert chi(a * b) == chi(a) * chi(b)
    assert chi.is_odd() == (chi(N - 1) == rational(-1, chi.value_level))


@settings(max_examples=40)
@given(st.integers(3, 128).filter(is_prime_power))
def test_odd_bernoulli_nonzero_at_prime_powers(q):
    assert all(not bernoulli_b1(c).is_zero() for c in odd_characters(q))


@given(st.integers(3, 9), st.integers(2, 300))
def test_mult_type_antisymmetry(n, N):
    assume(n % N)
    h = mult_type(n, N)
    U = unit_values(N)
    for i, a in enumerate(U):
        assert h.values[i] + h.values[U.index(N - a)] == n - 1
        assert h.values[i] == n * a // N


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5), st.integers(2, 60))
def test_basis_counting_agrees(n, N):
    assume(n % N)
    assert h_from_basis(n, N).values == mult_type(n, N).values


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 40))
def test_enumerated_types_are_admissible(q):
    T = enumerate_T(q)
    for g in T[:64]:
        assert in_T(g)
        assert all(g.values[i] + g.values[j] == 1
                   for i, a in enumerate(unit_values(q))
                   for j, b in enumerate(unit_values(q)) if (a + b) % q == 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 120))
def test_twist_set_closed_under_inverse(q):
    S = set(compute_S(q).members)
    assert q - 1 not in S
    assert 1 not in S
    assert all(pow(s, -1, q) in S for s in S)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 40), st.data())
def test_stabilizer_is_subgroup(q, data):
    g = data.draw(st.sampled_from(enumerate_T(q)[:64]))
    H = stabilizer(g)
    assert 1 in H and all(a * b % q in H for a in H for b in H)


@given(fractions, fractions, fractions, fractions)
def test_depressed_cubic_translation_invariant(A0, B0, C0, t):
    # f(x + t) has the same depressed form as f
    A = A0 + 3 * t
    B = B0 + 2 * A0 * t + 3 * t * t
    C = C0 + B0 * t + A0 * t * t + t**3
    d0, d1 = depressed_cubic(A0, B0, C0), depressed_cubic(A, B, C)
    assert d0[:2] == d1[:2]
    assert d1[2] - d0[2] == t
    f = Poly([C0, B0, A0, Fraction(1)])
    g = Poly([d0[1], d0[0], Fraction(0), Fraction(1)])
    for v in (Fraction(-2), Fraction(0), Fraction(3, 2)):
        assert f(v - d0[2]) == g(v)


@given(fractions, fractions, fractions, fractions, st.sampled_from([5, 7, 8, 11, 16]))
def test_normalizer_translation_invariant(A0, B0, C0, t, N):
    B1, C1, _ = depressed_cubic(A0, B0, C0)
    assume(4 * B1**3 + 27 * C1**2 != 0)
    A = A0 + 3 * t
    B = B0 + 2 * A0 * t + 3 * t * t
    C = C0 + B0 * t + A0 * t * t + t**3
    assert normalizer_classification_general(A0, B0, C0, N) == \
        normalizer_classification_general(A, B, C, N)


def test_zeta_powers():
    for n in (5, 12):
        assert zeta(n) ** n == rational(1, n)
