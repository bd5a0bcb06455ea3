"""Command-line front end.

Exit codes: 0 definite positive answer, 1 definite negative answer,
2 usage or relation-file error, 3 budget exhausted (Unknown).
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import oracles
from .criterion import muchnik_test, s_shiftable
from .errors import DefinableInput, FormulaSyntaxError, WitnessError
from .formula import (
    BoundedStructure, build_beta, build_sigma, build_varsigma, eval_bounded, parse,
)
from .periodicity import is_expanding, minimal_period
from .pipeline import lcm_over_s, nu_witness
from .relation import Relation, cube_at
from .specfile import load_spec
from .verdict import Budget

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _relation(args, required: bool = True) -> Optional[Relation]:
    if args.builtin and args.spec:
        raise UsageError("give either --builtin or --spec, not both")
    if args.builtin:
        try:
            return oracles.builtin(args.builtin, args.bound, args.dim)
        except (KeyError, ValueError) as e:
            raise UsageError(str(e).strip("'\"")) from None
    if args.spec:
        return load_spec(args.spec)
    if required:
        raise UsageError("a relation is required: use --builtin NAME or --spec PATH")
    return None


def _budget(args) -> Budget:
    try:
        return Budget(max_k=args.max_k, max_s=args.max_s, max_t=args.max_t,
                      coord_bound=args.coord_bound, window=args.window,
                      max_section=args.max_section, theta=args.theta)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _header(args) -> str:
    keys = ["command", "builtin", "spec", "bound", "dim", "max_k", "max_s", "max_t", "coord_bound",
            "window", "max_section", "qbound", "theta", "count", "format"]
    extra = [k for k in vars(args) if k not in keys and k != "func"]
    parts = []
    for k in keys + sorted(extra):
        v = getattr(args, k, None)
        if v is None or v is False:
            continue
        if isinstance(v, list):
            v = ",".join(v)
        parts.append(f"{k}={v}")
    return "# config " + " ".join(parts)


def cmd_check_definable(args, out) -> int:
    rel = _relation(args)
    budget = _budget(args)
    v = muchnik_test(rel, budget)
    print(_header(args), file=out)
    print(f"relation {rel.describe()}", file=out)
    if v.is_fails:
        print(f"verdict=DEFINABLE ({v.note})", file=out)
        return EXIT_NO
    if v.is_unknown:
        print(f"verdict=UNKNOWN [{budget.describe()}] {v.note}", file=out)
        return EXIT_UNKNOWN
    ev = v.value
    summary = f"property {ev.prop}"
    if ev.prop == "a":
        summary += f", section ({ev.section[0]},{ev.section[1]})"
    elif ev.prop == "b":
        ks = sorted({K for _, K, _ in ev.table})
        summary += ", K=" + ",".join(map(str, ks))
    print(f"verdict=NOT-DEFINABLE ({summary}) [{budget.describe()}]", file=out)
    print(ev.report(), file=out)
    return EXIT_YES


def cmd_witness(args, out) -> int:
    rel = _relation(args)
    budget = _budget(args)
    if args.family:
        trace = lcm_over_s(rel, budget, args.count)
    else:
        try:
            trace = nu_witness(rel, budget)
        except DefinableInput as e:
            print(_header(args), file=out)
            print(f"no witness: {e}", file=out)
            return EXIT_NO
    print(_header(args), file=out)
    final = trace.final()
    if args.format == "lines":
        print("\n".join(trace.lines()), file=out)
    else:
        print(f"branch={trace.branch}" + (f" final={final.branch}" if final is not trace else ""), file=out)
    if trace.is_unknown:
        print(f"witness=UNKNOWN [{budget.describe()}] {trace.note}", file=out)
        return EXIT_UNKNOWN
    w = trace.witness
    shown = w.values[: args.count]
    print(f"provenance={w.provenance} stop={w.exhausted_at}", file=out)
    print("values=" + ",".join(map(str, shown)), file=out)
    if w.horizon is not None and w.horizon >= 9:
        win = w.window()
        print(f"periodicity {minimal_period(win).line()}", file=out)
        exp = is_expanding(win, increases=args.expand_increases, repetitions=args.expand_repetitions)
        print(f"expanding {exp}", file=out)
    return EXIT_YES


def _extent(text: str) -> tuple[int, int]:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"bad extent {text!r}, expected WxH") from None
    if w < 1 or h < 1:
        raise UsageError("extent must be positive")
    return w, h


def cmd_cube_map(args, out) -> int:
    rel = _relation(args)
    if rel.dimension != 2:
        raise UsageError("cube-map needs a relation of dimension 2")
    if args.s < 1 or args.k < 0:
        raise UsageError("need s >= 1 and k >= 0")
    w, h = _extent(args.extent)
    if rel.bound is not None:
        # keep every cube and shift inside the evaluation bound
        top = rel.bound - args.k - args.s
        if top < 0:
            raise UsageError("extent is empty after clamping to the relation bound")
        w, h = min(w, top + 1), min(h, top + 1)
    print("x0,x1,in_R,cube_code,s_shiftable", file=out)
    for x1 in range(h):
        for x0 in range(w):
            p = (x0, x1)
            c = cube_at(rel, p, args.k)
            sh = s_shiftable(rel, args.s, args.k, p)
            print(f"{x0},{x1},{int(rel.contains(p))},{c.bits},{int(sh)}", file=out)
    return EXIT_YES


def _assignment(items: Sequence[str]) -> dict[str, int]:
    env = {}
    for item in items:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            name, eq, value = part.partition("=")
            if not eq:
                raise UsageError(f"bad assignment {part!r}, expected name=value")
            try:
                env[name.strip()] = int(value)
            except ValueError:
                raise UsageError(f"bad value in {part!r}") from None
    return env


def cmd_eval(args, out) -> int:
    rel = _relation(args, required=False)
    if (args.formula is None) == (args.schema is None):
        raise UsageError("give exactly one of --formula or --schema")
    if args.formula is not None:
        phi = parse(args.formula)
    else:
        d = args.schema_dim or (rel.dimension if rel is not None else 2)
        phi = {"beta": build_beta, "sigma": build_sigma, "varsigma": build_varsigma}[args.schema](d)
    env = _assignment(args.assign)
    try:
        value = eval_bounded(phi, BoundedStructure(rel, args.qbound), env)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(_header(args), file=out)
    print(f"{'true' if value else 'false'} Q={args.qbound}", file=out)
    return EXIT_YES if value else EXIT_NO


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("relation")
    g.add_argument("--builtin", metavar="NAME", help=f"one of {', '.join(oracles.BUILTIN_NAMES)}")
    g.add_argument("--spec", metavar="PATH", help="relation spec file")
    g.add_argument("--bound", type=int, help="evaluation bound for --builtin")
    g.add_argument("--dim", type=int, help="dimension for the full/empty builtins")
    b = p.add_argument_group("budget")
    d = Budget()
    b.add_argument("--max-k", type=int, default=d.max_k)
    b.add_argument("--max-s", type=int, default=d.max_s)
    b.add_argument("--max-t", type=int, default=d.max_t)
    b.add_argument("--coord-bound", type=int, default=d.coord_bound)
    b.add_argument("--window", type=int, default=d.window)
    b.add_argument("--max-section", type=int, default=d.max_section)
    b.add_argument("--qbound", type=int, default=100, help="quantifier bound Q for eval")
    b.add_argument("--theta", type=int, default=d.theta)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--format", choices=["text", "csv", "lines"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="presburger-witness",
        description="Budgeted definability test and non-periodic witness extraction.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-definable", help="run the three-valued definability test")
    _common(p)
    p.set_defaults(func=cmd_check_definable)

    p = sub.add_parser("witness", help="extract a non-periodic set from the relation")
    _common(p)
    p.add_argument("--family", action="store_true",
                   help="treat the relation as a family of rows and run the lcm construction")
    p.add_argument("--expand-increases", type=int, default=3,
                   help="gap increases needed to call the witness expanding")
    p.add_argument("--expand-repetitions", type=int, default=10,
                   help="repeats of the largest gap that rule expanding out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("cube-map", help="CSV of cube codes and shiftability on a window")
    _common(p)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--extent", default="26x6", help="WxH corners (x0 < W, x1 < H)")
    p.set_defaults(func=cmd_cube_map)

    p = sub.add_parser("eval", help="bounded evaluation of a formula")
    _common(p)
    p.add_argument("--formula", help="formula text")
    p.add_argument("--schema", choices=["beta", "sigma", "varsigma"])
    p.add_argument("--schema-dim", type=int)
    p.add_argument("--assign", action="append", default=[], metavar="NAME=VALUE[,...]")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_YES
    try:
        return args.func(args, out)
    except (UsageError, FormulaSyntaxError, WitnessError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
