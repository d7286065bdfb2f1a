"""Command-line front door.

Output is byte-deterministic for identical inputs: fixed field order, CSV
headers always emitted, floats printed with 12 significant digits, and JSON
documents carry a top-level schema tag "shapeforge/1".  Domain errors exit
with status 1 and a one-line diagnostic naming the violated invariant;
usage errors exit with status 2.

The environment variable SHAPEFORGE_MAX_N raises the enumeration and
expansion guards.  This is unsafe: the guards exist to keep memory and
runtime bounded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .asymptotics import (
    ASYM_TARGETS,
    asym_count,
    asym_pi,
    asym_pi_expected,
    convergence_report,
    deflate,
    find_zeta,
)
from .counting import ExactCounts
from .errors import ShapeforgeError
from .paths import PathKind, decode1, decode2, encode1, encode2, parse_path
from .series import (
    IDENTITY_NAMES,
    compatible_counts,
    verify_identity,
)
from .structures import (
    analyze_elements,
    parse_structure,
    to_island_diagram,
    to_pi,
    to_pi_prime,
)

SCHEMA = "shapeforge/1"


class UsageError(ValueError):
    """A missing or inconsistent flag; reported with exit status 2."""


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _emit_rows(args, header: list, rows: list, extra: dict | None = None) -> None:
    fmt = getattr(args, "format", "plain")
    if fmt == "json":
        doc = {"schema": SCHEMA}
        if extra:
            doc.update(extra)
        doc["rows"] = [
            {name: (value if not isinstance(value, float) else float(_fmt(value)))
             for name, value in zip(header, row)}
            for row in rows
        ]
        print(json.dumps(doc))
    elif fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(_fmt(v) for v in row))
    else:
        if extra:
            for key, value in extra.items():
                print(f"{key}: {_fmt(value)}")
        print("  ".join(header))
        for row in rows:
            print("  ".join(_fmt(v) for v in row))


def _emit_value(args, value, extra: dict | None = None) -> None:
    fmt = getattr(args, "format", "plain")
    if fmt == "json":
        doc = {"schema": SCHEMA}
        if extra:
            doc.update(extra)
        doc["value"] = value if not isinstance(value, float) else float(_fmt(value))
        print(json.dumps(doc))
    elif fmt == "csv":
        print("value")
        print(_fmt(value))
    else:
        print(_fmt(value))


def _read_text(args) -> str:
    if getattr(args, "infile", None):
        with open(args.infile, "r", encoding="ascii") as fh:
            return fh.read().strip()
    if getattr(args, "text", None) is not None:
        return args.text
    raise UsageError("provide --in TEXT or --file PATH")


def _guard(default: int) -> int:
    env = os.environ.get("SHAPEFORGE_MAX_N")
    if env:
        return max(default, int(env))
    return default


# -- subcommand handlers ------------------------------------------------------


def _cmd_validate(args) -> int:
    ss = parse_structure(_read_text(args))
    _emit_value(args, "valid", {"length": ss.n, "pairs": len(ss.pairs)})
    return 0


def _cmd_analyze(args) -> int:
    ss = parse_structure(_read_text(args))
    report = analyze_elements(ss)
    fields = [
        ("hairpins", len(report.hairpins)),
        ("bulges", len(report.bulges)),
        ("tails", len(report.tails)),
        ("interior_loops", len(report.interior_loops)),
        ("multiloops", len(report.multiloops)),
        ("external_components", report.external_components),
        ("stacks", len(report.stacks)),
        ("islands", len(report.islands)),
    ]
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "length": ss.n,
            "counts": dict(fields),
            "hairpins": [{"pair": list(p), "loop": L} for p, L in report.hairpins],
            "bulges": [list(r) for r in report.bulges],
            "tails": [list(r) for r in report.tails],
            "interior_loops": [[list(a), list(b)] for a, b in report.interior_loops],
            "multiloops": [{"branches": k, "gaps": list(g)} for k, g in report.multiloops],
            "stacks": [{"pair": list(p), "length": k} for p, k in report.stacks],
            "islands": [list(r) for r in report.islands],
        }
        print(json.dumps(doc))
    else:
        _emit_rows(args, ["element", "count"], fields)
    return 0


def _cmd_abstract(args) -> int:
    ss = parse_structure(_read_text(args))
    if args.level == "island":
        out = to_island_diagram(ss).text
    elif args.level == "pi-prime":
        out = to_pi_prime(ss).text
    else:
        out = to_pi(to_pi_prime(ss)).text
    print(out)
    return 0


def _cmd_bijection(args) -> int:
    text = args.path if args.path is not None else args.text
    if text is None:
        raise UsageError("provide --path TEXT (or --in TEXT)")
    if args.direction == "encode2":
        print(encode2(parse_path(text, PathKind.MOTZKIN2)))
    elif args.direction == "encode1":
        print(encode1(parse_path(text, PathKind.MOTZKIN1)).text)
    elif args.direction == "decode2":
        print(decode2(text).steps)
    else:
        print(decode1(text).steps)
    return 0


def _cmd_count(args) -> int:
    counts = ExactCounts()
    family = args.family
    if family == "catalan":
        _require(args.n is not None, "catalan needs --n")
        _emit_value(args, counts.catalan(args.n))
    elif family == "motzkin":
        _require(args.n is not None, "motzkin needs --n")
        _emit_value(args, counts.motzkin_number(args.n))
    elif family == "motzkin-coeff":
        _require(args.n is not None, "motzkin-coeff needs --n")
        rows = [(k, counts.motzkin_poly_coeff(args.n, k)) for k in range(args.n // 2 + 1)]
        _emit_rows(args, ["k", "count"], rows)
    elif family == "narayana":
        _require(args.n is not None, "narayana needs --n")
        rows = [(k, counts.narayana(args.n, k)) for k in range(1, args.n + 1)]
        _emit_rows(args, ["k", "count"], rows)
    elif family == "convolution":
        _require(args.n is not None, "convolution needs --n")
        rows = [(p, counts.catalan_convolution(args.n, p)) for p in range(1, args.n + 1)]
        _emit_rows(args, ["p", "count"], rows)
    elif family == "level0":
        _require(args.n is not None, "level0 needs --n")
        rows = [(r0, counts.level0_total(r0, args.n)) for r0 in range(args.n + 1)]
        _emit_rows(args, ["r0", "count"], rows)
    else:  # islands
        _require(args.ell is not None, "islands needs --ell")
        ell = args.ell
        rows = []
        for h in range(1, ell + 1):
            for islands in range(h + 1, 2 * ell + 1):
                c = counts.island_count(h, islands, ell)
                if c:
                    rows.append((h, islands, c))
        _emit_rows(args, ["hairpins", "islands", "count"], rows)
    return 0


def _cmd_verify(args) -> int:
    names = IDENTITY_NAMES if args.name == "all" else (args.name,)
    counts = ExactCounts()
    reports = []
    for name in names:
        bound = args.bound
        if bound is None and name == "island_gf_forms_agree" and args.order is not None:
            bound = args.order
        reports.append(verify_identity(name, bound, counts))
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "reports": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            status = "pass" if r.passed else f"FAIL at {r.counterexample}"
            print(f"{r.name}: {status} ({r.range_checked})")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_distribution(args) -> int:
    if args.family == "level0":
        _require(args.n is not None, "level0 distribution needs --n")
        rows = convergence_report("level0", n=args.n, r0_max=args.r0_max)
        extra = {"family": "level0", "n": args.n}
    else:
        _require(args.lam is not None and args.nu is not None,
                 "pi distribution needs --lambda and --nu")
        rows = convergence_report("pi", lam=args.lam, nu=args.nu,
                                  r0_max=args.r0_max, limit=_guard(2000))
        extra = {"family": "pi", "lambda": args.lam, "nu": args.nu}
    _emit_rows(args, ["r0", "exact", "asymptotic", "deviation"], rows,
               extra if args.format == "json" else None)
    return 0


def _cmd_asymptotics(args) -> int:
    if args.target == "zeta":
        _require(args.lam is not None, "zeta needs --lambda")
        sing = deflate(args.lam, find_zeta(args.lam))
        doc = {
            "lambda": args.lam,
            "zeta": float(_fmt(sing.zeta)),
            "parity": sing.parity,
            "cofactor_at_zeta": float(_fmt(sing.cofactor_at_zeta)),
            "distribution_base": float(_fmt(asym_pi(args.lam, 0, sing))),
            "expected_r0": float(_fmt(asym_pi_expected(args.lam, sing))),
        }
        if args.format == "json":
            print(json.dumps({"schema": SCHEMA, **doc}))
        else:
            for key, value in doc.items():
                print(f"{key}: {_fmt(value)}")
        return 0
    needs = {
        "motzkin_number": ("n",),
        "level0_total": ("n", "r0"),
        "level0_weighted_sum": ("n",),
        "pi_total": ("lam", "nu"),
        "pi_r0": ("lam", "nu", "r0"),
        "pi_weighted_sum": ("lam", "nu"),
    }
    for field in needs[args.target]:
        flag = "--lambda" if field == "lam" else f"--{field}"
        _require(getattr(args, field) is not None, f"{args.target} needs {flag}")
    report = asym_count(
        args.target,
        n=args.n,
        lam=args.lam,
        nu=args.nu,
        r0=args.r0,
        limit=_guard(2000),
    )
    doc = {
        "target": report.target,
        **report.params,
        "exact": report.exact,
        "asymptotic": report.asymptotic,
        "ratio": report.ratio,
    }
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **{
            k: (float(_fmt(v)) if isinstance(v, float) else v) for k, v in doc.items()
        }}))
    else:
        for key, value in doc.items():
            print(f"{key}: {_fmt(value)}")
    return 0


def _cmd_compatible(args) -> int:
    table = compatible_counts(args.lam, args.nu, limit=_guard(2000))
    r0_max = args.r0_max if args.r0_max is not None else table.r0_max
    rows = [(r0, table.count(r0, args.nu)) for r0 in range(r0_max + 1)]
    extra = {"lambda": args.lam, "nu": args.nu, "total": table.total(args.nu)}
    _emit_rows(args, ["r0", "count"], rows, extra if args.format == "json" else None)
    return 0


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


# -- parser -------------------------------------------------------------------


def _add_format(p):
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")


def _add_input(p):
    p.add_argument("--in", dest="text", help="input text")
    p.add_argument("--file", dest="infile", help="read input from a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapeforge",
        description="Exact combinatorics of RNA abstract shapes and Motzkin paths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a dot-bracket string")
    _add_input(p)
    _add_format(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("analyze", help="report the structure elements")
    _add_input(p)
    _add_format(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("abstract", help="abstract a structure to a shape")
    p.add_argument("--level", choices=("island", "pi-prime", "pi"), required=True)
    _add_input(p)
    _add_format(p)
    p.set_defaults(func=_cmd_abstract)

    p = sub.add_parser("bijection", help="run a path/bracket encoding or its inverse")
    p.add_argument("direction", choices=("encode1", "encode2", "decode1", "decode2"))
    p.add_argument("--path", help="input path steps or bracket text")
    p.add_argument("--in", dest="text", help="alias for --path")
    _add_format(p)
    p.set_defaults(func=_cmd_bijection)

    p = sub.add_parser("count", help="exact counting tables")
    p.add_argument("family", choices=(
        "catalan", "motzkin", "motzkin-coeff", "narayana", "convolution",
        "level0", "islands"))
    p.add_argument("--n", type=int)
    p.add_argument("--ell", type=int)
    _add_format(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("verify", help="verify combinatorial identities")
    p.add_argument("name", choices=IDENTITY_NAMES + ("all",))
    p.add_argument("--n", dest="bound", type=int, help="range bound")
    p.add_argument("--ell", dest="bound", type=int, help="range bound (alias)")
    p.add_argument("--order", type=int, help="series order for the gf check")
    _add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("distribution", help="finite-size vs limit distributions")
    p.add_argument("family", choices=("level0", "pi"))
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--nu", type=int)
    p.add_argument("--r0-max", dest="r0_max", type=int, default=8)
    _add_format(p)
    p.set_defaults(func=_cmd_distribution)

    p = sub.add_parser("asymptotics", help="exact counts against their asymptotics")
    p.add_argument("--target", choices=ASYM_TARGETS + ("zeta",), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--nu", type=int)
    p.add_argument("--r0", type=int)
    _add_format(p)
    p.set_defaults(func=_cmd_asymptotics)

    p = sub.add_parser("compatible", help="compatible pi-shape counts")
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--r0-max", dest="r0_max", type=int)
    _add_format(p)
    p.set_defaults(func=_cmd_compatible)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ShapeforgeError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
