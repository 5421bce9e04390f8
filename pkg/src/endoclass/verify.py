"""Verification sweeps with independent cross-checks.

Every suite returns a list of ``ReportRow`` objects whose status is
"pass", "fail" or "info".  Sweeps over many moduli can fan out to worker
processes; results are always merged back in ascending order so the
report is byte-for-byte reproducible.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .characters import (
    S0_set,
    all_characters,
    induced_product_formula_check,
    vanishing_bounds,
    odd_characters,
    primitive_by_characters,
)
from .classifier import (
    EXAMPLE_FORMS,
    AlgebraDescriptor,
    classify_example,
    possible_algebras,
    split_outcomes,
    theorem_table,
)
from .cm_types import (
    CMType,
    compute_S,
    compute_S_bruteforce,
    decompose_h,
    enumerate_T,
    expected_S,
    is_primitive,
    is_primitive_mult_type,
    middle_pair_count,
    mult_type,
    stabilizing_twists,
    triadic_function,
    twisted_decompositions,
    twisted_decompositions_bruteforce,
)
from .curves import (
    differential_basis,
    genus_decomposition_audit,
    h_from_basis,
    new_part_dimension,
    riemann_hurwitz_genus,
)
from .cyclotomic import (
    cyclotomic_field,
    fixed_subfield,
    minimal_polynomial,
    quadratic_field,
    zeta,
)
from .group_algebra import cyclotomic_in_delta, eps, eps_tilde, eta, one, scalar
from .residue import cyclic_subgroup, divisors, euler_phi, is_prime_power, ord_mod, prime_power_parts, unit_values

__all__ = [
    "ReportRow",
    "SUITES",
    "ordered_map",
    "default_jobs",
    "run_suite",
    "bits",
    "DECOMPOSITION_TABLES",
]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    return x


@dataclass(frozen=True)
class ReportRow:
    subject: str
    parameters: dict = field(default_factory=dict)
    result: object = None
    status: str = "info"

    def __post_init__(self):
        if self.status not in ("pass", "fail", "info"):
            raise ValueError(f"bad status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> str:
        return json.dumps({"subject": self.subject,
                           "parameters": _jsonable(self.parameters),
                           "result": _jsonable(self.result),
                           "status": self.status},
                          separators=(",", ":"), default=str)

    def to_tsv(self) -> str:
        params = ";".join(f"{k}={_scalar_text(v)}" for k, v in self.parameters.items())
        return "\t".join([self.subject, params,
                          json.dumps(_jsonable(self.result), separators=(",", ":"), default=str),
                          self.status])


def _scalar_text(v) -> str:
    if isinstance(v, (list, tuple, set, frozenset)):
        return ",".join(str(x) for x in (sorted(v) if isinstance(v, (set, frozenset)) else v))
    return str(v)


def bits(g) -> str:
    """0/1 (or small integer) values at the ascending units, as one string."""
    return "".join(str(v) for v in g.values)


def _check(flag: bool) -> str:
    return "pass" if flag else "fail"


def default_jobs() -> int:
    raw = os.environ.get("ENDOCLASS_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"ENDOCLASS_JOBS must be an integer, got {raw!r}") from None


def ordered_map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """map(fn, items), in input order, optionally across worker processes."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _prime_powers(lo: int, hi: int, pred: Callable[[int, int], bool] = lambda p, r: True):
    out = []
    for q in range(max(lo, 2), hi + 1):
        if is_prime_power(q):
            p, r = prime_power_parts(q)
            if pred(p, r):
                out.append(q)
    return out


# ----------------------------------------------------------------- twist sets

def _twist_row(q: int, brute_limit: int = 16) -> ReportRow:
    ts = compute_S(q)
    got = sorted(ts.members)
    exp = expected_S(q)
    result = {"S": got, "witness": {s: bits(ts.witnesses[s]) for s in got},
              "unique": all(ts.unique(s) for s in got)}
    ok = True
    if exp is not None:
        result["expected"] = sorted(exp)
        ok = set(got) == set(exp)
    if middle_pair_count(q) <= brute_limit:
        brute = sorted(compute_S_bruteforce(q))
        result["bruteforce_agrees"] = brute == got
        ok = ok and brute == got
    # closure under inverses, and -1 never a member
    ok = ok and all(pow(s, -1, q) in ts.members for s in got) and (q - 1) not in got
    status = _check(ok) if exp is not None else ("info" if ok else "fail")
    return ReportRow("S_q", {"q": q}, result, status)


def suite_twist_sets(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    hi = max_value or 200
    qs = _prime_powers(5, hi, lambda p, r: p >= 5)
    qs += [9, 27, 81, 243, 16, 32, 64, 128, 256, 8]
    return ordered_map(_twist_row, sorted(set(qs)), jobs)


# ----------------------------------------------------------------- decomposition tables

# Hand-transcribed tables: q -> (units, h, g1, g2, relations), where each
# relation (x, s, y) reads "x o theta_s = y".
DECOMPOSITION_TABLES = {
    7: ((1, 2, 3, 4, 5, 6), "001122", "001011", "000111", [("g1", 2, "g1")]),
    5: ((1, 2, 3, 4), "0112", "0101", "0011", [("g2", 2, "g1")]),
    9: ((1, 2, 4, 5, 7, 8), "001122", "000111", "001011", [("g1", 2, "g2")]),
    8: ((1, 3, 5, 7), "0112", "0101", "0011", [("g1", 5, "g1"), ("g2", 3, "g2")]),
}


def _table_row(q: int) -> ReportRow:
    units, h_txt, g1_txt, g2_txt, relations = DECOMPOSITION_TABLES[q]
    h = mult_type(3, q)
    decs = decompose_h(q)
    found = [{bits(d.g1), bits(d.g2)} for d in decs]
    named = {"g1": CMType(q, tuple(int(c) for c in g1_txt)),
             "g2": CMType(q, tuple(int(c) for c in g2_txt))}
    rel_ok = [named[x].compose(s) == named[y] for x, s, y in relations]
    ok = (tuple(unit_values(q)) == units and bits(h) == h_txt
          and found == [{g1_txt, g2_txt}] and all(rel_ok))
    d = decs[0] if decs else None
    result = {"h": bits(h), "pairs": [sorted(p) for p in found],
              "relations": [f"{x} o theta_{s} = {y}: {ok_}" for (x, s, y), ok_
                            in zip(relations, rel_ok)]}
    if d is not None:
        result["stabilizers"] = [sorted(st) for st in d.stabilizers]
        result["twists"] = list(d.twists)
    return ReportRow("decomp_table", {"q": q}, result, _check(ok))


def suite_tables(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    return [_table_row(q) for q in (5, 7, 8, 9)]


# ----------------------------------------------------------------- middle values

def _middle_chunk(bounds: tuple[int, int]) -> list[int]:
    lo, hi = bounds
    out = []
    for N in range(lo, hi):
        # some unit a with N/3 <= a < 2N/3
        if not any(gcd(a, N) == 1 for a in range(-(-N // 3), -(-2 * N // 3))):
            out.append(N)
    return out


def suite_middle_values(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    hi = max_value or 10000
    step = 2000
    chunks = [(lo, min(lo + step, hi + 1)) for lo in range(2, hi + 1, step)]
    exceptions = [N for part in ordered_map(_middle_chunk, chunks, jobs) for N in part]
    return [ReportRow("middle_values", {"max": hi}, {"exceptions": exceptions},
                      _check(exceptions == [N for N in (4, 6, 10) if N <= hi]))]


# ----------------------------------------------------------------- primitivity

def _primitivity_for_N(N: int) -> tuple[int, list[int], bool]:
    """(N, degrees n in 3..7 whose type is imprimitive, character test verdict)."""
    bad = [n for n in range(3, 8) if gcd(n, N) == 1 and n % N
           and not is_primitive_mult_type(mult_type(n, N))]
    return N, bad, primitive_by_characters(N)


def _T_primitivity(q: int, brute_limit: int = 10) -> ReportRow:
    twists = stabilizing_twists(q)
    result = {"stabilizing_twists": list(twists)}
    ok = not twists
    if middle_pair_count(q) <= brute_limit:
        brute = all(is_primitive(g) for g in enumerate_T(q))
        result["bruteforce_all_primitive"] = brute
        ok = ok and brute
    return ReportRow("T_q_primitive", {"q": q}, result, _check(ok))


def suite_primitivity(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    hi = max_value or 300
    rows = []
    for N, bad, by_chars in ordered_map(_primitivity_for_N, range(3, hi + 1), jobs):
        direct = not bad
        rows.append(ReportRow("h_primitive", {"N": N},
                              {"imprimitive_n": bad, "character_test": by_chars},
                              _check(direct and by_chars == direct)))
    qs = _prime_powers(5, 125, lambda p, r: p >= 5) + [9, 27, 81]
    qs = [q for q in sorted(qs) if q != 7]
    rows += ordered_map(_T_primitivity, qs, jobs)
    return rows


# ----------------------------------------------------------------- Bernoulli bounds

def _bernoulli_for_N(N: int) -> ReportRow:
    S = odd_characters(N)
    S0 = S0_set(N)
    res = {"S": len(S), "S0": len(S0)}
    ok = 2 * len(S0) < len(S)
    if is_prime_power(N):
        ok = ok and not S0
    else:
        b = vanishing_bounds(N)
        res.update(s_ratio=b.s_ratio, v_sum=b.v_sum, w=b.w)
        ok = ok and b.s_ratio <= b.v_sum and b.chain_holds
    return ReportRow("S0", {"N": N}, res, _check(ok))


def _product_formula_for_N(N: int) -> ReportRow:
    chars = [c for c in all_characters(N) if not c.is_trivial()]
    bad = [list(c.exponents) for c in chars if not induced_product_formula_check(c)]
    return ReportRow("B1_product_formula", {"N": N},
                     {"characters": len(chars), "failures": bad}, _check(not bad))


def suite_bernoulli(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    hi = max_value or 300
    rows = ordered_map(_bernoulli_for_N, range(3, hi + 1), jobs)
    rows += ordered_map(_product_formula_for_N, range(2, min(hi, 100) + 1), jobs)
    return rows


# ----------------------------------------------------------------- twisted splittings

def _twisted_row(q: int) -> ReportRow:
    sols = twisted_decompositions(q)
    found = {s: [bits(g) for g in gs] for s, gs in sols.items()}
    p, r = prime_power_parts(q)
    if q == 5:
        ok = set(found) >= {2} and all(s in (2, 3) for s in found)
    elif p == 3:
        g = triadic_function(q)
        s1, s2 = q // 3 - 1, 2 * q // 3 - 1
        ok = (found.get(s1) == [bits(g)] and len(found.get(s2, [])) == 1
              and set(found) == {s1, s2})
    else:
        ok = not found
    if euler_phi(q) <= 24:
        # literal search over all 2^(phi/2) antisymmetric functions
        for s in unit_values(q):
            brute = sorted(bits(g) for g in twisted_decompositions_bruteforce(q, s))
            ok = ok and brute == sorted(found.get(s, []))
    return ReportRow("twisted", {"q": q}, {"solutions": found}, _check(ok))


def suite_twisted(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    qs = [7, 11, 13, 25, 49, 121, 16, 32, 64, 5, 27, 81]
    return ordered_map(_twisted_row, qs, jobs)


# ----------------------------------------------------------------- fields

def suite_fields(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    rows = []
    for n, gen, disc in ((7, 2, -7), (8, 5, -4), (8, 3, -8)):
        F = fixed_subfield(n, cyclic_subgroup(gen, n))
        rows.append(ReportRow("fixed_subfield", {"n": n, "generator": gen},
                              {"degree": F.degree, "disc": F.quadratic_discriminant,
                               "minpoly": str(F.min_poly)},
                              _check(F.degree == 2 and F.quadratic_discriminant == disc)))
    for q in (16, 32, 64):
        s = q // 2 - 1
        F = fixed_subfield(q, cyclic_subgroup(s, q))
        alpha = zeta(q) + zeta(q, s)
        deg_alpha = len(minimal_polynomial(alpha).coeffs) - 1
        ok = (euler_phi(q) == 2 * F.degree and deg_alpha == F.degree
              and alpha.galois(s) == alpha)
        rows.append(ReportRow("alpha_field", {"q": q},
                              {"relative_degree": euler_phi(q) // F.degree,
                               "alpha_degree": deg_alpha}, _check(ok)))
    for q in (9, 27, 81):
        s = q // 3 - 1
        ok = ord_mod(s, q) == 6 and pow(s, 3, q) == q - 1
        rows.append(ReportRow("order_six", {"q": q, "s": s},
                              {"order": ord_mod(s, q), "cube": pow(s, 3, q)}, _check(ok)))
    return rows


# ----------------------------------------------------------------- group algebra

def _group_algebra_for_N(N: int) -> ReportRow:
    divs = divisors(N)
    etas = {D: eta(N, D) for D in divs}
    zero = scalar(N, 0)
    ok = sum((etas[D] for D in divs), zero) == one(N)
    for i, D in enumerate(divs):
        e = etas[D]
        ok = ok and e * e == e
        for D2 in divs[i + 1:]:
            ok = ok and (e * etas[D2]).is_zero()
        ok = ok and e * eps_tilde(N, D) == e
        ok = ok and (cyclotomic_in_delta(N, D) * e).is_zero()
    epss = [eps(N, a) for a in range(N)]
    ok = ok and sum(epss, zero) == one(N)
    for a in range(N):
        ok = ok and epss[a] * epss[a] == epss[a]
        for b in range(a + 1, N):
            ok = ok and (epss[a] * epss[b]).is_zero()
    return ReportRow("group_algebra", {"N": N}, {"divisors": divs}, _check(ok))


def suite_group_algebra(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    return ordered_map(_group_algebra_for_N, range(2, (max_value or 24) + 1), jobs)


# ----------------------------------------------------------------- geometry

def _geometry_for_N(N: int) -> ReportRow:
    res = {"genus": riemann_hurwitz_genus(N, 3)}
    ok = genus_decomposition_audit(N, 3)
    if N <= 60:
        for n in (3, 4, 5):
            if n % N == 0:
                continue
            ok = ok and h_from_basis(n, N) == mult_type(n, N)
            ok = ok and len(differential_basis(n, N)) == riemann_hurwitz_genus(N, n)
    if N > 3:
        ok = ok and new_part_dimension(N, 3) == euler_phi(N)
    return ReportRow("geometry", {"N": N}, res, _check(ok))


def suite_geometry(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    rows = ordered_map(_geometry_for_N, range(2, (max_value or 100) + 1), jobs)
    g5, g7 = riemann_hurwitz_genus(5, 3), riemann_hurwitz_genus(7, 3)
    rows.append(ReportRow("genus_small", {"N": "5,7"}, {"genus": [g5, g7]},
                          _check((g5, g7) == (4, 6))))
    return rows


# ----------------------------------------------------------------- classifier

CLASSIFIER_QS = (4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 81, 121, 125)


def classifier_comparison(q: int) -> dict:
    """Derived outcomes against the closed-form table for one q."""
    derived = possible_algebras(q)
    table = [alg for _, alg in theorem_table(q)]
    derived_set, table_set = set(derived), set(table)
    labels = {alg: lbl for lbl, alg in theorem_table(q)}
    unrealized = sorted((labels[a], a.name) for a in table_set - derived_set)
    return {
        "derived": sorted(a.name for a in derived_set),
        "unexpected": sorted(a.name for a in derived_set - table_set),
        "unrealized": [f"{lbl}: {name}" for lbl, name in unrealized],
        "census": {a.name: c for a, c in split_outcomes(q).items()},
        "dimension_ok": all(
            a.maximal_commutative_dimension == 2 * euler_phi(q)
            for a in split_outcomes(q)),
    }


def _classifier_row(q: int) -> ReportRow:
    cmp_ = classifier_comparison(q)
    ok = not cmp_["unexpected"] and not cmp_["unrealized"] and cmp_["dimension_ok"]
    return ReportRow("classify", {"q": q}, cmp_, _check(ok))


def suite_classifier(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    return ordered_map(_classifier_row, CLASSIFIER_QS, jobs)


def expected_examples(q: int) -> dict[str, AlgebraDescriptor]:
    """The explicit families whose algebra is stated, for one modulus."""
    E = cyclotomic_field(q)
    p, r = prime_power_parts(q)
    out: dict[str, AlgebraDescriptor] = {}
    if q == 4:
        return {f: AlgebraDescriptor.of((2, quadratic_field(-1))) for f in EXAMPLE_FORMS}
    out["generic_transcendental"] = AlgebraDescriptor.of(E)
    if q % 3:
        out["x3+1"] = AlgebraDescriptor.of(cyclotomic_field(3 * q))
    if q % 2 == 0 and q % 3:
        out["x3-x"] = AlgebraDescriptor.of(cyclotomic_field(2 * q))
    if p >= 5 and q not in (5, 7):
        out["x3+x"] = AlgebraDescriptor.of(E, E)
    if p == 3 and q >= 9:
        out["x3+1"] = AlgebraDescriptor.of((2, E))
    if p == 3 and q >= 27:
        out["x3-x"] = AlgebraDescriptor.of(E, E)
    if q in (5, 9):
        out["x3-x"] = AlgebraDescriptor.of((2, E))
    if q == 7:
        out["x3-x"] = AlgebraDescriptor.of((3, quadratic_field(-7)), E)
    return out


def _examples_row(q: int) -> ReportRow:
    got, bad = {}, []
    for form, alg in expected_examples(q).items():
        have = classify_example(form, q)
        got[form] = have.name
        if have != alg:
            bad.append(form)
    return ReportRow("examples", {"q": q}, {"algebras": got, "mismatches": bad},
                     _check(not bad))


def suite_examples(max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    return ordered_map(_examples_row, CLASSIFIER_QS, jobs)


SUITES: dict[str, Callable[[int | None, int], list[ReportRow]]] = {
    "twist-sets": suite_twist_sets,
    "tables": suite_tables,
    "middle-values": suite_middle_values,
    "primitivity": suite_primitivity,
    "bernoulli": suite_bernoulli,
    "twisted": suite_twisted,
    "fields": suite_fields,
    "group-algebra": suite_group_algebra,
    "geometry": suite_geometry,
    "classifier": suite_classifier,
    "examples": suite_examples,
}


def run_suite(name: str, max_value: int | None = None, jobs: int = 1) -> list[ReportRow]:
    """Rows of one suite followed by a summary row."""
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    rows = fn(max_value, jobs)
    failures = sum(1 for r in rows if r.status == "fail")
    rows.append(ReportRow("summary", {"suite": name},
                          {"rows": len(rows), "failures": failures},
                          _check(failures == 0)))
    return rows


def iter_suites(names: Iterable[str]) -> list[str]:
    names = list(names)
    return list(SUITES) if names == ["all"] else names
