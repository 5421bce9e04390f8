"""Exact computations for endomorphism algebras of superelliptic Jacobians y^N = f(x), deg f = 3.

The subpackages build on each other: ``residue`` and ``poly`` supply
integer and polynomial plumbing, ``cyclotomic`` does exact arithmetic in
Q(zeta_n), ``characters`` handles Dirichlet characters and B_{1,chi},
``group_algebra`` the idempotents of Q[Z/N], ``cm_types`` the CM-type
combinatorics, ``curves`` the geometry of the curve, and ``classifier``
turns all of it into endomorphism algebras.
"""

from .residue import Modulus, UnitResidue, coprime_interval, units
from .cyclotomic import (
    CyclotomicElement,
    FieldDescriptor,
    cyclotomic_field,
    fixed_subfield,
    minimal_polynomial,
    zeta,
)
from .characters import DirichletCharacter, all_characters, bernoulli_b1
from .cm_types import CMType, MultiplicationType, compute_S, decompose_h, mult_type
from .classifier import (
    AlgebraDescriptor,
    NotCovered,
    classify_example,
    classify_from_centralizer,
    possible_algebras,
    theorem_table,
)

__version__ = "0.1.0"

__all__ = [
    "Modulus",
    "UnitResidue",
    "coprime_interval",
    "units",
    "CyclotomicElement",
    "FieldDescriptor",
    "cyclotomic_field",
    "fixed_subfield",
    "minimal_polynomial",
    "zeta",
    "DirichletCharacter",
    "all_characters",
    "bernoulli_b1",
    "CMType",
    "MultiplicationType",
    "compute_S",
    "decompose_h",
    "mult_type",
    "AlgebraDescriptor",
    "NotCovered",
    "classify_example",
    "classify_from_centralizer",
    "possible_algebras",
    "theorem_table",
]
