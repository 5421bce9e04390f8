"""Command-line front end.

Every subcommand prints one row per result: tab-separated
``subject, parameters, result (compact JSON), status`` by default, or one
JSON object per line with ``--json``.  CM types are written as strings of
their values at the units in ascending order, so for q = 7 the string
"001011" means g(1) = g(2) = 0, g(3) = 1, g(4) = 0, g(5) = g(6) = 1.

Exit status: 0 on success, 1 when a checked result fails (always for
``verify``, and for the other commands under ``--assert``), 2 on usage
errors or inputs outside the supported range.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Iterable, Sequence

from .characters import all_characters, bernoulli_b1, vanishing_bounds, odd_characters, S0_set
from .classifier import (
    CENTRALIZER_CASES,
    NotCovered,
    classify_example,
    classify_from_centralizer,
    possible_algebras,
    theorem_table,
)
from .cm_types import count_T, decompose_h, enumerate_T, middle_pair_count, twisted_decompositions
from .curves import (
    differential_basis,
    new_part_dimension,
    normalizer_classification_general,
    riemann_hurwitz_genus,
)
from .cyclotomic import fixed_subfield
from .residue import cyclic_subgroup, is_prime_power
from .verify import SUITES, ReportRow, _twist_row, bits, default_jobs, iter_suites, ordered_map, run_suite

log = logging.getLogger("endoclass")

CASE_ALIASES = {"E": "E", "L": "L", "EplusE": "E+E", "E+E": "E+E",
                "Mat2E": "Mat2(E)", "Mat2(E)": "Mat2(E)"}
FORM_ALIASES = {"x3p1": "x3+1", "x3mx": "x3-x", "x3px": "x3+x",
                "generic": "generic_transcendental"}


class UsageError(Exception):
    pass


def _int_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo_i, hi_i + 1)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# ----------------------------------------------------------------- commands

def cmd_sq(args) -> list[ReportRow]:
    qs = [args.q] if args.q is not None else list(args.range)
    qs = [q for q in qs if q >= 4]
    if not qs:
        raise UsageError("need q >= 4")
    return ordered_map(_twist_row, qs, args.jobs)


def cmd_tq(args) -> list[ReportRow]:
    q = args.q
    result = {"middle_pairs": middle_pair_count(q), "size": count_T(q)}
    if count_T(q) <= args.limit:
        result["members"] = [bits(g) for g in enumerate_T(q)]
    return [ReportRow("T_q", {"q": q}, result)]


def cmd_decompose(args) -> list[ReportRow]:
    q = args.q
    if args.twisted is not None:
        sols = twisted_decompositions(q, args.twisted)
        return [ReportRow("twisted", {"q": q, "s": s}, [bits(g) for g in gs])
                for s, gs in sols.items()]
    rows = []
    for d in decompose_h(q):
        st1, st2 = d.stabilizers
        rows.append(ReportRow("decomp", {"q": q}, {
            "g1": bits(d.g1), "g2": bits(d.g2),
            "stab1": sorted(st1), "stab2": sorted(st2), "twists": list(d.twists)}))
    return rows


def _classify_record(q: int, case: str, alg) -> dict:
    out = {"q": q, "case": case}
    out.update(alg.to_json())
    out["name"] = alg.name
    return out


def cmd_classify(args) -> list[ReportRow]:
    if args.f is not None:
        if args.N is None:
            raise UsageError("--f needs --N")
        form = FORM_ALIASES.get(args.f, args.f)
        alg = classify_example(form, args.N)
        rec = _classify_record(args.N, form, alg)
        return [ReportRow("classify", {"form": form, "N": args.N}, rec)]
    if args.q is None:
        raise UsageError("give --q with --case/--all, or --f with --N")
    q = args.q
    if args.table:
        return [ReportRow("classify_table", {"q": q, "label": lbl},
                          _classify_record(q, lbl, alg)) for lbl, alg in theorem_table(q)]
    if args.case is None:
        algs = possible_algebras(q, galois_s3=args.galois_s3)
        return [ReportRow("classify", {"q": q, "case": "any"},
                          _classify_record(q, "any", a)) for a in algs]
    case = CASE_ALIASES[args.case]
    return [ReportRow("classify", {"q": q, "case": case}, _classify_record(q, case, a))
            for a in classify_from_centralizer(q, case)]


def cmd_bernoulli(args) -> list[ReportRow]:
    N = args.N
    if N < 3:
        raise UsageError("need N >= 3")
    chars = odd_characters(N) if args.odd_only else all_characters(N)
    rows = []
    for chi in chars:
        b = bernoulli_b1(chi)
        value = str(b.to_rational()) if b.is_rational() else [str(c) for c in b.coeffs]
        rows.append(ReportRow("B1", {"N": N, "chi": list(chi.exponents)}, {
            "parity": "odd" if chi.is_odd() else "even",
            "conductor": chi.conductor, "order": chi.order,
            "level": b.n, "value": value, "zero": b.is_zero()}))
    return rows


def _s0_row(N: int) -> ReportRow:
    S, S0 = odd_characters(N), S0_set(N)
    res = {"S": len(S), "S0": len(S0), "S0_characters": [list(c.exponents) for c in S0]}
    ok = 2 * len(S0) < len(S)
    if not is_prime_power(N):
        b = vanishing_bounds(N)
        res.update(s_ratio=b.s_ratio, v=b.v, w=b.w)
        ok = ok and b.chain_holds
    else:
        ok = ok and not S0
    return ReportRow("S0", {"N": N}, res, "pass" if ok else "fail")


def cmd_s0(args) -> list[ReportRow]:
    Ns = [args.N] if args.N is not None else list(args.range)
    Ns = [N for N in Ns if N >= 3]
    if not Ns:
        raise UsageError("need N >= 3")
    return ordered_map(_s0_row, Ns, args.jobs)


def cmd_fields(args) -> list[ReportRow]:
    n = args.n
    H = set()
    for g in args.gens or [1]:
        H |= cyclic_subgroup(g, n)
    # close up under products
    while True:
        new = {a * b % n for a in H for b in H} | H
        if new == H:
            break
        H = new
    F = fixed_subfield(n, H)
    res = {"degree": F.degree, "subgroup": sorted(F.subgroup), "name": F.name,
           "minpoly": F.min_poly_str(), "field": F.to_json(),
           "fallback": F.fallback_used}
    return [ReportRow("field", {"n": n, "gens": args.gens or [1]}, res)]


def cmd_curve(args) -> list[ReportRow]:
    if args.what == "genus":
        N, n = args.N, args.n
        g = riemann_hurwitz_genus(N, n)
        return [ReportRow("genus", {"N": N, "n": n},
                          {"genus": g, "new_part_dimension": new_part_dimension(N, n)})]
    if args.what == "basis":
        pairs = differential_basis(args.n, args.N)
        return [ReportRow("basis", {"N": args.N, "n": args.n},
                          {"size": len(pairs), "pairs": [list(p) for p in pairs]})]
    aut = normalizer_classification_general(args.A0, args.B0, args.C0, args.N)
    return [ReportRow("aut", {"N": args.N, "A0": str(args.A0), "B0": str(args.B0),
                              "C0": str(args.C0)},
                      {"order": aut.order, "x": aut.generator_x, "y": aut.generator_y,
                       "case": aut.case})]


def cmd_verify(args) -> list[ReportRow]:
    rows = []
    for name in iter_suites(args.suite):
        rows += run_suite(name, args.max, args.jobs)
    return rows


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object per line")
    common.add_argument("--assert", dest="assert_", action="store_true",
                        help="exit 1 if any row has status fail")
    common.add_argument("--jobs", type=int, default=None,
                        help="worker processes for sweeps (default: $ENDOCLASS_JOBS or 1)")

    p = argparse.ArgumentParser(
        prog="endoclass",
        description="Exact CM-type combinatorics and endomorphism algebras of "
                    "superelliptic Jacobians y^N = f(x), deg f = 3.",
        epilog="CM types print as their values at the ascending units, "
               "e.g. q=7: 001011.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sq", parents=[common], help="twist sets S_q")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--q", type=int)
    g.add_argument("--range", type=_int_range, metavar="LO..HI")
    sp.set_defaults(func=cmd_sq)

    sp = sub.add_parser("tq", parents=[common], help="the admissible CM types T_q")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--limit", type=int, default=64, help="list members up to this count")
    sp.set_defaults(func=cmd_tq)

    sp = sub.add_parser("decompose", parents=[common], help="splittings h = g1 + g2")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--twisted", type=int, metavar="S",
                    help="instead solve h = g + g o theta_S")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("classify", parents=[common], help="endomorphism algebras")
    sp.add_argument("--q", type=int)
    sp.add_argument("--case", choices=sorted(CASE_ALIASES))
    sp.add_argument("--galois-s3", action="store_true",
                    help="assume Gal(f) = S3 over a field containing zeta_q")
    sp.add_argument("--table", action="store_true", help="print the closed-form case list")
    sp.add_argument("--f", choices=sorted(FORM_ALIASES) + sorted(FORM_ALIASES.values()))
    sp.add_argument("--N", type=int)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("bernoulli", parents=[common], help="B_{1,chi} for characters mod N")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--odd-only", action="store_true")
    sp.set_defaults(func=cmd_bernoulli)

    sp = sub.add_parser("s0", parents=[common], help="odd characters with B_{1,chi} = 0")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--N", type=int)
    g.add_argument("--range", type=_int_range, metavar="LO..HI")
    sp.set_defaults(func=cmd_s0)

    sp = sub.add_parser("fields", parents=[common], help="subfields of Q(zeta_n)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--gens", type=int, nargs="*", help="generators of the fixing subgroup")
    sp.set_defaults(func=cmd_fields)

    sp = sub.add_parser("curve", parents=[common], help="genus, differentials, automorphisms")
    sp.add_argument("what", choices=("genus", "basis", "aut"))
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--A0", type=_fraction, default=Fraction(0))
    sp.add_argument("--B0", type=_fraction, default=Fraction(0))
    sp.add_argument("--C0", type=_fraction, default=Fraction(0))
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", action="append", required=True,
                    choices=sorted(SUITES) + ["all"])
    sp.add_argument("--max", type=int, default=None, help="sweep bound for the suite")
    sp.set_defaults(func=cmd_verify)
    return p


def emit(rows: Iterable[ReportRow], as_json: bool, out=None) -> None:
    out = out or sys.stdout
    for r in rows:
        if as_json and r.subject in ("classify", "classify_table"):
            out.write(json.dumps(r.result, separators=(",", ":"), default=str) + "\n")
        else:
            out.write((r.to_json() if as_json else r.to_tsv()) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.jobs is None:
            args.jobs = default_jobs()
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        rows = args.func(args)
    except (UsageError, NotCovered, ValueError, OverflowError) as exc:
        print(f"endoclass {args.command}: {exc}", file=sys.stderr)
        return 2
    emit(rows, args.json)
    failed = any(r.status == "fail" for r in rows)
    if failed and (args.assert_ or args.command == "verify"):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
