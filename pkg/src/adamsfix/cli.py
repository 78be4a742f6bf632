"""Command-line entry point.

    adamsfix agroup   --group '{"type":"symmetric","n":4}'
    adamsfix verify   --sym 2..5 --alt 3..5 --abelian 2:1..3
    adamsfix analytic residues --group sym:2 --fn '{"0":1,"1":-1}'

Exit codes: 0 success (including recorded A_n prediction mismatches),
1 malformed input, 2 size guard or path validation failure, 3 mismatch of
the S_n or elementary abelian prediction, 4 solver and oracle disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import analytic
from .closedforms import (
    FAMILY_AN,
    a_an_closed,
    a_elementary_abelian,
    a_sn_closed,
    compare,
)
from .fixpoints import DEFAULT_GUARD, brute_force_fixed_points, is_fixed_point, solve_fixed_points
from .groups import FiniteGroupModel, GroupBoundError, cyclic_table, dihedral_table, quaternion_table

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_MISMATCH, EXIT_INCONSISTENT = 0, 1, 2, 3, 4


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    group: FiniteGroupModel | None = None
    tol: float = 1e-10
    order: int = 30
    guard: int = DEFAULT_GUARD
    out: str | None = None
    fmt: str = "json"
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (0 < self.tol <= 1e-2):
            raise InputError(f"--tol must lie in (0, 1e-2], got {self.tol}")
        if self.guard <= 0:
            raise InputError("--guard must be positive")
        if self.order < 2:
            raise InputError("--order must be at least 2")


# ---------------------------------------------------------------------------
# parsing helpers


def parse_group(text: str) -> FiniteGroupModel:
    """Inline JSON, a path to a JSON file, or a shorthand like sym:4, alt:5, ab:2,3."""
    text = text.strip()
    try:
        if text.startswith("{"):
            return FiniteGroupModel.from_json(json.loads(text))
        if os.path.exists(text):
            with open(text) as fh:
                return FiniteGroupModel.from_json(json.load(fh))
        kind, _, arg = text.partition(":")
        kind = kind.lower()
        if kind in ("sym", "symmetric"):
            return FiniteGroupModel.symmetric(int(arg))
        if kind in ("alt", "alternating"):
            return FiniteGroupModel.alternating(int(arg))
        if kind in ("ab", "abelian"):
            return FiniteGroupModel.abelian(int(x) for x in arg.split(",") if x)
        if kind in ("cyclic", "z"):
            return cyclic_table(int(arg))
        if kind in ("dihedral", "d"):
            return dihedral_table(int(arg))
        if kind == "q8":
            return quaternion_table()
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad group spec {text!r}: {exc}") from None
    raise InputError(f"unrecognised group spec {text!r}")


def parse_class_function(text: str, g: FiniteGroupModel) -> np.ndarray:
    """'const1' or a JSON map class_id -> number or [re, im]; unlisted classes are 0."""
    l = len(g.classes)
    if text.strip() == "const1":
        return np.ones(l, dtype=complex)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad class function {text!r}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("class function must be a JSON object or 'const1'")
    f = np.zeros(l, dtype=complex)
    try:
        for key, val in data.items():
            j = int(key)
            if not 0 <= j < l:
                raise InputError(f"class id {j} out of range 0..{l - 1}")
            if isinstance(val, (list, tuple)):
                if len(val) != 2:
                    raise InputError(f"class {j}: expected [re, im]")
                f[j] = complex(float(val[0]), float(val[1]))
            else:
                f[j] = complex(float(val))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad class function {text!r}: {exc}") from None
    return f


def parse_complex(text: str) -> complex:
    text = text.strip()
    try:
        if "," in text:
            re_s, im_s = text.split(",")
            return complex(float(re_s), float(im_s))
        return complex(text.replace("i", "j"))
    except ValueError:
        raise InputError(f"bad complex number {text!r}") from None


def parse_range(text: str) -> list[int]:
    """'2..5' -> [2, 3, 4, 5]; '4' -> [4]; '2,4,6' -> [2, 4, 6]."""
    try:
        if ".." in text:
            a, b = text.split("..")
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"bad range {text!r}") from None


def parse_abelian_range(text: str) -> list[tuple[int, int]]:
    """'2:1..3' -> [(2, 1), (2, 2), (2, 3)]."""
    if ":" not in text:
        raise InputError(f"--abelian expects p:m-range, got {text!r}")
    p, ms = text.split(":", 1)
    return [(int(p), m) for m in parse_range(ms)]


def dump(obj, cfg: RunConfig) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_agroup(cfg: RunConfig) -> int:
    g = cfg.group
    method = cfg.extra.get("method", "solver")
    if cfg.extra.get("closed"):
        report = _closed_report_for(g)
        compare(report, method, cfg.guard)
        dump(report.to_json(), cfg)
        if report.verdict == "skipped":
            return EXIT_BOUND
        return EXIT_MISMATCH if report.fatal else EXIT_OK
    result = solve_fixed_points(g) if method == "solver" else brute_force_fixed_points(g, cfg.guard)
    dump(result.to_json(), cfg)
    # every generator must also pass the truncated series identity
    if not all(is_fixed_point(g, gen, cfg.order, cfg.tol) for gen in result.generators):
        print("error: a generator fails the series fixed-point check", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def _closed_report_for(g: FiniteGroupModel):
    if g.kind == "symmetric":
        return a_sn_closed(g.n)
    if g.kind == "alternating":
        return a_an_closed(g.n)
    if g.kind == "abelian" and len(set(g.factors)) == 1:
        return a_elementary_abelian(g.factors[0], len(g.factors))
    raise InputError(f"no closed form for {g.describe()}")


def cmd_verify(cfg: RunConfig) -> int:
    sym, alt, ab = cfg.extra["sym"], cfg.extra["alt"], cfg.extra["abelian"]
    methods = ["solver", "oracle"] if cfg.extra["method"] == "both" else [cfg.extra["method"]]
    builders = ([(a_sn_closed, n) for n in sym] + [(a_an_closed, n) for n in alt]
                + [(lambda pm: a_elementary_abelian(*pm), pm) for pm in ab])
    rows = []
    code = EXIT_OK
    for build, arg in builders:
        observed = {}
        for method in methods:
            report = compare(build(arg), method, cfg.guard)
            rows.append(report.to_json())
            if report.verdict == "skipped":
                print(f"notice: {report.group.describe()} skipped for {method}: guard exceeded",
                      file=sys.stderr)
                continue
            observed[method] = report.observed
            if report.fatal:
                code = max(code, EXIT_MISMATCH)
        if len(set(observed.values())) > 1:
            code = EXIT_INCONSISTENT
            rows.append({"inconsistency": build(arg).group.to_json(),
                         "observed": {k: list(v) for k, v in observed.items()}})
    dump({"reports": rows, "summary": _summary(rows)}, cfg)
    return code


def _summary(rows: Sequence[dict]) -> list[str]:
    out = []
    for r in rows:
        if "family" not in r:
            continue
        tag = "audit" if r["family"] == FAMILY_AN else "check"
        out.append(f"{r['family']} {json.dumps(r['group'])} [{r['method']}] "
                   f"{r['verdict']} ({tag}) predicted={r['predicted']} observed={r['observed']}")
    return out


def cmd_analytic(cfg: RunConfig) -> int:
    g = cfg.group
    action = cfg.extra["action"]
    f = parse_class_function(cfg.extra["fn"], g)
    class_ids = [cfg.extra["class_id"]] if cfg.extra.get("class_id") is not None else [c.id for c in g.classes]
    if not all(0 <= j < len(g.classes) for j in class_ids):
        raise InputError(f"--class must lie in 0..{len(g.classes) - 1}")
    path = None
    if cfg.extra.get("path"):
        try:
            path = analytic.PathSpec.parse(cfg.extra["path"], cfg.extra.get("clearance", analytic.DEFAULT_CLEARANCE))
        except ValueError as exc:
            raise InputError(f"bad path: {exc}") from None

    def cval(z: complex) -> list[float]:
        return [z.real, z.imag]

    if action == "residues":
        dump({"group": g.to_json(), "reports": [analytic.residues(g, f, j).to_json() for j in class_ids]}, cfg)
        return EXIT_OK
    if action == "minus-one":
        dump({"group": g.to_json(), **analytic.minus_one_defined(g, f).to_json()}, cfg)
        return EXIT_OK
    if action == "continue":
        if path is None:
            raise InputError("continue needs --path")
        rows = []
        for j in class_ids:
            start = analytic.lambda_eval(g, f, j, path.waypoints[0], cfg.tol)
            end = analytic.continue_along_path(g, f, j, path, cfg.tol)
            row = {"class_id": j, "start": cval(start), "value": cval(end)}
            if path.waypoints[0] == path.waypoints[-1] and start != 0:
                row["monodromy_factor"] = cval(end / start)
            rows.append(row)
        dump({"group": g.to_json(), "path": [cval(z) for z in path.waypoints], "results": rows}, cfg)
        return EXIT_OK
    ts = [parse_complex(s) for s in (cfg.extra.get("t") or "").split()]
    if not ts:
        raise InputError(f"{action} needs --t")
    if action == "sweep" or cfg.fmt == "csv":
        rows = analytic.sweep(g, f, ts, cfg.tol)
        rows = [r for r in rows if r["class_id"] in class_ids]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=analytic.CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        if cfg.fmt == "json":
            dump({"group": g.to_json(), "rows": rows}, cfg)
        elif cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
        return EXIT_OK
    rows = []
    for t in ts:
        for j in class_ids:
            if action == "eval":
                rows.append({"t": cval(t), "class_id": j, "lambda": cval(analytic.lambda_at(g, f, j, t, cfg.tol, path))})
            elif action == "psi":
                rows.append({"t": cval(t), "class_id": j, "psi": cval(analytic.psi_eval(g, f, j, t, cfg.tol, path))})
            else:
                raise InputError(f"unknown analytic action {action!r}")
    dump({"group": g.to_json(), "results": rows}, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adamsfix", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--order", type=int, default=30)
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    common.add_argument("--out", default=None)
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None,
                        help="json, except csv for 'analytic sweep'")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("agroup", parents=[common], help="compute A(G)")
    p.add_argument("--group", required=True)
    p.add_argument("--method", choices=("solver", "oracle"), default="solver")
    p.add_argument("--closed", action="store_true", help="report the closed-form prediction and compare")

    p = sub.add_parser("verify", parents=[common], help="compare closed forms with computed A(G)")
    p.add_argument("--sym", default=None, help="range of n, e.g. 2..5")
    p.add_argument("--alt", default=None, help="range of n, e.g. 3..5")
    p.add_argument("--abelian", action="append", default=[], help="p:m-range, e.g. 2:1..3")
    p.add_argument("--method", choices=("solver", "oracle", "both"), default="both")

    p = sub.add_parser("analytic", parents=[common], help="evaluate and continue Lambda_{-t}(f)")
    p.add_argument("action", choices=("eval", "residues", "continue", "sweep", "psi", "minus-one"))
    p.add_argument("--group", default="sym:1")
    p.add_argument("--fn", default="const1")
    p.add_argument("--t", default=None, help="one or more complex t, space separated (re,im or 0.3+0.2j)")
    p.add_argument("--path", default=None, help="waypoints 're,im re,im ...'")
    p.add_argument("--clearance", type=float, default=analytic.DEFAULT_CLEARANCE)
    p.add_argument("--class", dest="class_id", type=int, default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        fmt = args.fmt or ("csv" if getattr(args, "action", None) == "sweep" else "json")
        cfg = RunConfig(args.command, tol=args.tol, order=args.order, guard=args.guard,
                        out=args.out, fmt=fmt)
        if args.command == "agroup":
            cfg.group = parse_group(args.group)
            cfg.extra = {"method": args.method, "closed": args.closed}
            return cmd_agroup(cfg)
        if args.command == "verify":
            cfg.extra = {
                "sym": parse_range(args.sym) if args.sym else [],
                "alt": parse_range(args.alt) if args.alt else [],
                "abelian": [pm for spec in args.abelian for pm in parse_abelian_range(spec)],
                "method": args.method,
            }
            return cmd_verify(cfg)
        cfg.group = parse_group(args.group)
        cfg.extra = {"action": args.action, "fn": args.fn, "t": args.t, "path": args.path,
                     "class_id": args.class_id, "clearance": args.clearance}
        return cmd_analytic(cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GroupBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as exc:
        # path validation and domain errors from the analytic layer
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
