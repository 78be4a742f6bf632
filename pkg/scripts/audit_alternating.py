"""Predicted vs computed A(A_n) for a range of n.

    python3 scripts/audit_alternating.py --max-n 9 --oracle-max-n 7
"""

import argparse
import json

from adamsfix.closedforms import a_an_closed, compare
from adamsfix.partitions import enum_p2star_odd_bar, three_adic_decomposition


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--oracle-max-n", type=int, default=7, help="also run the exhaustive oracle up to here")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    for n in range(args.min_n, args.max_n + 1):
        r = compare(a_an_closed(n), "solver")
        row = {
            "n": n,
            "bar_podd": sorted(list(p) for p in enum_p2star_odd_bar(n)),
            "three_adic": None if three_adic_decomposition(n) is None else list(three_adic_decomposition(n).exponents),
            "predicted": list(r.predicted),
            "solver": list(r.observed),
            "verdict": r.verdict,
        }
        if n <= args.oracle_max_n:
            row["oracle"] = list(compare(a_an_closed(n), "oracle").observed)
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'n':>3}  {'predicted':<12} {'solver':<12} {'oracle':<12} verdict")
    for row in rows:
        oracle = str(row.get("oracle", "-"))
        print(f"{row['n']:>3}  {str(row['predicted']):<12} {str(row['solver']):<12} {oracle:<12} {row['verdict']}")


if __name__ == "__main__":
    main()
