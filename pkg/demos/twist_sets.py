"""Which twists s carry some admissible CM type back into the admissible set?

For each prime power q we solve for S_q with the parity solver, compare it
with the closed form, and print one witness type per twist.
"""

from endoclass.cm_types import compute_S, expected_S
from endoclass.residue import is_prime_power


def main() -> None:
    for q in range(5, 65):
        if not is_prime_power(q):
            continue
        S = compute_S(q)
        want = expected_S(q)
        verdict = "no closed form" if want is None else ("matches" if set(S.members) == want else "MISMATCH")
        print(f"q = {q:3d}  S_q = {list(S.members)}  ({verdict})")
        for s, g in S.witnesses.items():
            print(f"        s = {s:3d}: g = {g.bits()}  g o theta_s = {g.compose(s).bits()}")


if __name__ == "__main__":
    main()
