"""Split h(a) = floor(3a/q) into two admissible CM types for the small moduli.

For q = 5, 7, 8, 9 the splitting is unique up to swapping the two halves.
The printout shows both halves, their stabilizers, and any twist relating
them, which is what decides the shape of the endomorphism algebra.
"""

from endoclass.classifier import pair_outcome
from endoclass.cm_types import decompose_h, mult_type
from endoclass.residue import unit_values


def main() -> None:
    for q in (5, 7, 8, 9):
        print(f"q = {q}, units {list(unit_values(q))}")
        print(f"  h  = {mult_type(3, q).bits()}")
        for d in decompose_h(q):
            s1, s2 = (sorted(s) for s in d.stabilizers)
            print(f"  g1 = {d.g1.bits()}  stabilizer {s1}")
            print(f"  g2 = {d.g2.bits()}  stabilizer {s2}")
            if d.twists:
                print(f"  g2 = g1 o theta_s for s in {list(d.twists)}")
            print(f"  algebra: {pair_outcome(d.g1, d.g2).name}")
        print()


if __name__ == "__main__":
    main()
