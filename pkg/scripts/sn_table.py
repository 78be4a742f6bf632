"""A(S_n) from the solver next to #P^odd_{2*}(n), with timings."""

import argparse
import time

from adamsfix.fixpoints import solve_fixed_points
from adamsfix.groups import FiniteGroupModel
from adamsfix.partitions import enum_p2star_odd


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=10)
    args = ap.parse_args()
    print(f"{'n':>3} {'classes':>7} {'#Podd':>6} {'factors':>8} {'seconds':>8}")
    for n in range(1, args.max_n + 1):
        g = FiniteGroupModel.symmetric(n)
        start = time.perf_counter()
        a = solve_fixed_points(g)
        elapsed = time.perf_counter() - start
        podd = len(enum_p2star_odd(n))
        flag = "" if a.invariant_factors == (2,) * podd else "  <-- differs"
        print(f"{n:>3} {len(g.classes):>7} {podd:>6} {len(a.invariant_factors):>8} {elapsed:>8.3f}{flag}")


if __name__ == "__main__":
    main()
