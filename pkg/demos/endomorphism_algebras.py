"""Derive the possible endomorphism algebras of the new part for several q
and compare them with the closed-form case list, then classify the explicit
curves y^q = f(x) for a few concrete cubics.
"""

from endoclass.classifier import (
    NotCovered,
    classify_example,
    possible_algebras,
    theorem_table,
)

QS = (4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32)
FORMS = ("x3+1", "x3-x", "x3+x", "generic_transcendental")


def main() -> None:
    for q in QS:
        derived = set(possible_algebras(q))
        stated = {a for _, a in theorem_table(q)}
        print(f"q = {q}")
        for label, alg in theorem_table(q):
            mark = "derived" if alg in derived else "not derived"
            print(f"  {label}: {alg.name}  [{mark}]")
        extra = derived - stated
        if extra:
            print("  derived but not stated:", sorted(a.name for a in extra))
        for f in FORMS:
            try:
                print(f"  y^{q} = {f}: {classify_example(f, q).name}")
            except NotCovered as exc:
                print(f"  y^{q} = {f}: {exc}")
        print()


if __name__ == "__main__":
    main()
