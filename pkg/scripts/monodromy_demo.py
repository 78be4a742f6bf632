"""Residues at the roots of unity and the monodromy of small loops around them.

For each root w of t^|G| = 1, Lambda_{-t}(f) is continued once around a
circle centred at w and the resulting factor is compared with exp(2 pi i k).
"""

import argparse
import cmath
import math

import numpy as np

from adamsfix.analytic import PathSpec, continue_log_along_path, log_lambda_series, residues
from adamsfix.cli import parse_class_function, parse_group


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="sym:3")
    ap.add_argument("--fn", default=None, help="class function JSON; random if omitted")
    ap.add_argument("--class", dest="class_id", type=int, default=None)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g = parse_group(args.group)
    l = len(g.classes)
    if args.fn:
        f = parse_class_function(args.fn, g)
    else:
        rng = np.random.default_rng(args.seed)
        f = rng.normal(size=l) + 1j * rng.normal(size=l)
    j = l - 1 if args.class_id is None else args.class_id
    radius = 0.4 * abs(1 - cmath.exp(2j * math.pi / g.order))
    print(f"group {g.describe()}, class {g.classes[j].label()}, loop radius {radius:.3f}")
    print(f"{'p':>3} {'residue k_p':>28} {'kind':>15} {'|factor - exp(2 pi i k)|':>26}")
    for rec in residues(g, f, j).records:
        w = rec.root
        phase0 = cmath.phase(-w)
        loop = [w + radius * cmath.exp(1j * (phase0 + 2 * math.pi * s / 24)) for s in range(25)]
        loop[-1] = loop[0]
        start = log_lambda_series(g, f, j, loop[0])
        end = continue_log_along_path(g, f, j, PathSpec(tuple(loop), 0.9 * radius), tol=1e-11)
        err = abs(cmath.exp(end - start) - cmath.exp(2j * math.pi * rec.residue))
        print(f"{rec.p:>3} {rec.residue.real:>13.6f}{rec.residue.imag:+13.6f}i {rec.kind:>15} {err:>26.2e}")


if __name__ == "__main__":
    main()
