from fractions import Fraction
from math import gcd

import pytest
import sympy

from endoclass.cm_types import mult_type
from endoclass.curves import (
    depressed_cubic,
    differential_basis,
    genus_decomposition_audit,
    h_from_basis,
    is_holomorphic,
    lambda_special_values,
    new_part_dimension,
    normalizer_classification,
    normalizer_classification_general,
    riemann_hurwitz_genus,
)
from endoclass.residue import euler_phi

x = sympy.Symbol("x")


def rh_oracle(N, n):
    """Riemann-Hurwitz for the degree-N map to P^1: n points of index N, infinity of index N/gcd."""
    e_inf = N // gcd(N, n)
    ram = n * (N - 1) + (N // e_inf) * (e_inf - 1)
    return Fraction(-2 * N + ram, 2) + 1


def test_new_part_dimension():
    assert new_part_dimension(7, 3) == 6
    assert new_part_dimension(3, 3) == 1
    assert new_part_dimension(2, 5) == 2
    for N in range(4, 60):
        assert new_part_dimension(N, 3) == euler_phi(N)


def test_new_part_with_multiplicities():
    # y^4 = x^2 (x - 1): the double root and infinity both branch
    assert new_part_dimension(4, multiplicities=[2, 1]) == 1
    # y^2 = x^2 (x - 1)(x - 2): the double root and infinity do not branch
    assert new_part_dimension(2, multiplicities=[2, 1, 1]) == 0
    with pytest.raises(TypeError):
        new_part_dimension(5)


def test_de_jong_noot_genera():
    assert riemann_hurwitz_genus(5, 3) == 4
    assert riemann_hurwitz_genus(7, 3) == 6
    assert riemann_hurwitz_genus(2, 3) == 1


def test_differential_basis_examples():
    assert differential_basis(3, 5) == [(2, 1), (3, 1), (4, 1), (4, 2)]
    assert len(differential_basis(3, 7)) == 6
    assert len(differential_basis(3, 4)) == 3
    with pytest.raises(ValueError):
        differential_basis(3, 3)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_basis_counts_genus(n):
    for N in range(2, 50):
        if n % N == 0:
            continue
        g = riemann_hurwitz_genus(N, n)
        assert g == rh_oracle(N, n)
        assert len(differential_basis(n, N)) == g
        # the valuation test and the closed-form range pick the same forms
        by_test = [(a, b) for a in range(1, N) for b in range(1, n + 2) if is_holomorphic(n, N, a, b)]
        assert by_test == differential_basis(n, N)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_h_from_basis_matches_floor(n):
    for N in range(2, 61):
        if n % N:
            assert h_from_basis(n, N).values == mult_type(n, N).values


def test_h_from_basis_tables():
    assert h_from_basis(3, 7).values == (0, 0, 1, 1, 2, 2)
    assert h_from_basis(3, 5).values == (0, 1, 1, 2)


def test_genus_audit():
    for N in range(2, 101):
        assert genus_decomposition_audit(N, 3)
    assert riemann_hurwitz_genus(12, 3) == 10


def _expand_shift(A0, B0, C0):
    A0, B0, C0 = map(sympy.Rational, (A0, B0, C0))
    f = x**3 + A0 * x**2 + B0 * x + C0
    b = A0 / 3
    p = sympy.Poly(sympy.expand(f.subs(x, x - b)), x)
    c = p.all_coeffs()
    assert c[1] == 0
    return Fraction(str(c[2])), Fraction(str(c[3])), Fraction(str(b))


def test_depressed_cubic_examples():
    lam = 2
    B1, C1, b = depressed_cubic(-(1 + lam), lam, 0)
    assert b == -1
    assert B1 == Fraction(lam - 1 - lam * lam, 3) == -1
    assert depressed_cubic(0, 5, 7) == (5, 7, 0)
    assert depressed_cubic(3, 0, 0) == (-3, 2, 1)


@pytest.mark.parametrize("coeffs", [(1, 2, 3), (-4, 0, 1), (Fraction(1, 2), -3, 5), (9, 9, 9), (-6, 11, -6)])
def test_depressed_cubic_against_expansion(coeffs):
    assert depressed_cubic(*coeffs) == _expand_shift(*coeffs)


def test_normalizer_cases():
    d = normalizer_classification(1, 1, 5)
    assert d.order == 5 and d.case == "generic"
    d = normalizer_classification(0, 1, 5)
    assert d.order == 15 and d.generator_x == "omega x" and d.generator_y == "zeta_5 y"
    d = normalizer_classification(1, 0, 8)
    assert d.order == 16 and d.generator_x == "-x" and d.generator_y == "zeta_16 y"
    for bad in (2, 4, 3, 9):
        with pytest.raises(ValueError):
            normalizer_classification(1, 1, bad)
    with pytest.raises(ValueError):
        normalizer_classification(-3, 2, 5)


def test_normalizer_invariant_under_shift():
    # x(x - 1)(x - lambda) for a few lambda
    for lam, order in ((Fraction(2), 14), (Fraction(-1), 14), (Fraction(1, 2), 14), (Fraction(3), 7)):
        d = normalizer_classification_general(-(1 + lam), lam, 0, 7)
        assert d.order == order


def test_lambda_special_values():
    rec = lambda_special_values()
    assert sorted(rec["order_2N"]) == [Fraction(-1), Fraction(1, 2), Fraction(2)]
    assert rec["order_3N_rational_roots"] == []
    assert list(rec["order_3N_minpoly"].coeffs) == [1, -1, 1]
    assert rec["order_3N_discriminant"] == -3
    assert rec["order_3N_roots_check"]
    lam = sympy.Symbol("lam")
    B1 = sympy.Poly([sympy.Rational(str(c)) for c in reversed(rec["B0_prime"].coeffs)], lam)
    C1 = sympy.Poly([sympy.Rational(str(c)) for c in reversed(rec["C0_prime"].coeffs)], lam)
    assert sympy.factor(C1.as_expr()) == sympy.factor(-sympy.Rational(1, 27) * (1 + lam) * (lam - 2) * (2 * lam - 1))
    assert sympy.expand(B1.as_expr() + (lam**2 - lam + 1) / 3) == 0
    # lambda = 3 is generic
    assert B1.eval(3) != 0 and C1.eval(3) != 0
