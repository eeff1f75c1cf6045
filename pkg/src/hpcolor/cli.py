"""Command-line surface: color, verify, oracle, gen, render, bench.

Exit codes: 0 success, 2 verification failure (or no good coloring for
`oracle` signalled as 4), 3 invalid input / oversize, 4 oracle found no
coloring.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import run_bench
from .engine import InternalError, solve_detailed
from .generate import MODES, GenSpec, generate
from .model import (
    Instance,
    InstanceFormatError,
    coloring_from_json,
    coloring_to_json,
    validate,
)
from .render import render_svg
from .rationals import parse_scalar
from .verification import TooLargeError, hyperedges, oracle, verify

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_BAD_INPUT = 3
EXIT_NO_COLORING = 4


def _read_instance(path: str) -> Instance:
    try:
        return Instance.from_json(Path(path).read_text())
    except (OSError, InstanceFormatError) as exc:
        raise SystemExit(_fail(f"cannot read instance: {exc}"))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_BAD_INPUT


def cmd_color(args) -> int:
    inst = _read_instance(args.instance)
    try:
        result = solve_detailed(inst, check=not args.no_verify)
    except InternalError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    out = coloring_to_json(result.colors)
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _read_instance(args.instance)
    try:
        colors = coloring_from_json(Path(args.coloring).read_text())
    except (OSError, InstanceFormatError) as exc:
        return _fail(f"cannot read coloring: {exc}")
    if len(colors) != len(inst):
        return _fail(f"{len(colors)} colors for {len(inst)} half-planes")
    violation = verify(inst, colors, args.threshold)
    if violation is None:
        print("Ok")
        return EXIT_OK
    sys.stdout.write(violation.to_json())
    return EXIT_VIOLATION


def cmd_oracle(args) -> int:
    inst = _read_instance(args.instance)
    try:
        if args.all:
            found = _oracle_all(inst, args.threshold)
            for colors in found:
                sys.stdout.write(coloring_to_json(colors))
            return EXIT_OK if found else EXIT_NO_COLORING
        colors = oracle(inst, args.threshold)
    except TooLargeError as exc:
        return _fail(str(exc))
    if colors is None:
        print("no good coloring exists", file=sys.stderr)
        return EXIT_NO_COLORING
    sys.stdout.write(coloring_to_json(colors))
    return EXIT_OK


def _oracle_all(inst: Instance, k: int) -> list:
    from .model import BLUE, RED
    from .verification import ORACLE_LIMIT

    n = len(inst)
    if n > ORACLE_LIMIT:
        raise TooLargeError(f"{n} half-planes exceeds oracle limit {ORACLE_LIMIT}")
    edges = [e.covering for e in hyperedges(inst, k)]
    out = []
    for mask in range(2**n):
        colors = [(mask >> (n - 1 - i)) & 1 for i in range(n)]
        if all(
            any(colors[v] == 0 for v in e) and any(colors[v] == 1 for v in e)
            for e in edges
        ):
            out.append([RED if c else BLUE for c in colors])
    return out


def cmd_gen(args) -> int:
    if args.mode not in MODES:
        return _fail(f"unknown mode {args.mode!r}")
    inst = generate(GenSpec(n=args.n, mode=args.mode, seed=args.seed, bound=args.bound))
    text = inst.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_render(args) -> int:
    inst = _read_instance(args.instance)
    colors = None
    if args.coloring:
        try:
            colors = coloring_from_json(Path(args.coloring).read_text())
        except (OSError, InstanceFormatError) as exc:
            return _fail(f"cannot read coloring: {exc}")
        if len(colors) != len(inst):
            return _fail("coloring length mismatch")
    try:
        window = tuple(parse_scalar(v) for v in args.window.split(","))
        if len(window) != 4:
            raise ValueError("need x0,y0,x1,y1")
        svg = render_svg(inst, colors, window)
    except ValueError as exc:
        return _fail(str(exc))
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        return _fail("sizes must be a comma-separated integer list")
    if sizes != sorted(sizes):
        return _fail("sizes must be ascending")
    records = run_bench(sizes, seed=args.seed, repeats=args.repeats, kernel=args.kernel)
    rows = ["n,seconds,case_path"] + [r.csv_row() for r in records]
    text = "\n".join(rows) + "\n"
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    inst = _read_instance(args.instance)
    report = validate(inst)
    print(report.describe())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hpcolor",
        description="2-color half-planes so every triply covered point sees both colors",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="compute and verify a coloring")
    p.add_argument("instance")
    p.add_argument("--out", help="write the coloring JSON here")
    p.add_argument("--no-verify", action="store_true", help="skip certification")
    p.set_defaults(fn=cmd_color)

    p = sub.add_parser("verify", help="check a coloring at a depth threshold")
    p.add_argument("instance")
    p.add_argument("coloring")
    p.add_argument("--threshold", type=int, default=3)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive coloring search (n <= 20)")
    p.add_argument("instance")
    p.add_argument("--threshold", type=int, default=3)
    p.add_argument("--all", action="store_true", help="print every good coloring")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", default="random", choices=MODES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=50)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("render", help="emit an SVG of the arrangement")
    p.add_argument("instance")
    p.add_argument("--coloring")
    p.add_argument("--window", default="-10,-10,10,10")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("bench", help="time the solver across sizes")
    p.add_argument("--sizes", required=True, help="ascending comma list, e.g. 1024,2048")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="write records here instead of stdout")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--kernel", default="auto", choices=["auto", "c", "python"])
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("validate", help="report general-position violations")
    p.add_argument("instance")
    p.set_defaults(fn=cmd_validate)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EXIT_OK
        return EXIT_BAD_INPUT
    try:
        return args.fn(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
