"""How often does B_{1,chi} vanish for an odd character chi?

Vanishing never happens for prime-power moduli.  This script finds the
first modulus where it does, lists the offending characters, and prints
the exact share of vanishing characters next to the per-prime bound.
"""

from endoclass.characters import S0_set, S_set, bernoulli_b1, first_nonempty_S0, vanishing_bounds


def main() -> None:
    N = first_nonempty_S0(300)
    print(f"first modulus with a vanishing odd B_1: N = {N}")
    for chi in S0_set(N):
        print(f"  {chi}: B_1 = {bernoulli_b1(chi)}")
    print()
    print(" N   |S|  |S0|  share   bound")
    for N in range(3, 121):
        S0 = S0_set(N)
        if not S0:
            continue
        b = vanishing_bounds(N)
        print(f"{N:3d}  {len(S_set(N)):4d}  {len(S0):4d}  {str(b.s_ratio):>6}  {str(b.v_sum):>6}")


if __name__ == "__main__":
    main()
