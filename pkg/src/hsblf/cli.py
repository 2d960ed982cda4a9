"""Command-line front end.

Exit codes: 0 ok/true, 1 false/invalid, 2 unknown, 64 usage, 65 parse error.
Every report is one line of JSON on standard output; ``-`` in place of a file
reads standard input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .blf import DescriptorError, NoSectionError, SBLFDescriptor, build_Ws, invariants, validate
from .expr import ExpressionSyntaxError
from .freegroup import WordLengthExceeded
from .mcg import MappingClass, UndeterminedError, equal_bounded, equal_closed, evaluate_curve, parse_expression
from .surface.model import format_word

EXIT_OK, EXIT_FALSE, EXIT_UNKNOWN, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class InputParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def emit(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n")


def read_source(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {arg}: {e.strerror}") from None


def load_descriptor(arg: str) -> SBLFDescriptor:
    try:
        return SBLFDescriptor.loads(read_source(arg))
    except DescriptorError as e:
        raise InputParseError(str(e)) from None


# ----------------------------------------------------------------- commands


def cmd_verify(args) -> int:
    from .lemmas import run_checks
    from .surface.table import load_table, using_table

    def run():
        return run_checks(args.only)

    if args.table:
        try:
            table = load_table(args.table)
        except OSError as e:
            raise UsageError(f"cannot read {args.table}: {e.strerror}") from None
        except (ValueError, json.JSONDecodeError) as e:
            raise InputParseError(str(e)) from None
        with using_table(table):
            results = run()
    else:
        results = run()
    if not results:
        raise UsageError(f"no check matches {args.only!r}")
    failed = [r for r in results if not r.passed]
    first = None
    if failed:
        first = f"{failed[0].id}: {failed[0].description}"
        print(f"first failed relation: {first}", file=sys.stderr)
    emit({
        "status": "fail" if failed else "pass",
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "first_failure": first,
        "checks": [r.to_json() for r in results],
    })
    return EXIT_FALSE if failed else EXIT_OK


def cmd_ws(args) -> int:
    if args.s < 2:
        raise UsageError("--s must be at least 2")
    emit(build_Ws(args.s, args.normalized).to_json())
    return EXIT_OK


def cmd_validate(args) -> int:
    rep = validate(load_descriptor(args.file))
    emit(rep.to_json())
    return {"valid": EXIT_OK, "invalid": EXIT_FALSE}.get(rep.status, EXIT_UNKNOWN)


def cmd_invariants(args) -> int:
    desc = load_descriptor(args.file)
    rep = validate(desc)
    if rep.status != "valid":
        emit({"error": f"descriptor is {rep.status}", "validation": rep.to_json()})
        return EXIT_FALSE if rep.status == "invalid" else EXIT_UNKNOWN
    try:
        emit(invariants(desc, args.full))
    except NoSectionError as e:
        emit({"error": str(e)})
        return EXIT_FALSE
    return EXIT_OK


def _mapping(text: str, genus: int) -> MappingClass:
    try:
        return MappingClass.parse(text, genus)
    except ExpressionSyntaxError as e:
        raise InputParseError(f"{text!r}: {e}") from None
    except ValueError as e:
        raise InputParseError(f"{text!r}: {e}") from None


def cmd_mcg_equal(args) -> int:
    f, g = _mapping(args.e1, args.genus), _mapping(args.e2, args.genus)
    if not args.closed:
        ok = equal_bounded(f, g)
        emit({"status": "equal" if ok else "distinct", "model": "bounded", "bound": None, "witness": None})
        return EXIT_OK if ok else EXIT_FALSE
    v = equal_closed(f.closed(), g.closed(), args.bound)
    out = {"status": v.status, "model": "closed", "bound": v.bound,
           "witness": None if v.witness is None else format_word(v.witness) or "1",
           "reason": v.reason}
    emit(out)
    return {"equal": EXIT_OK, "distinct": EXIT_FALSE}.get(v.status, EXIT_UNKNOWN)


def load_factorization(arg: str, genus: int):
    from .hurwitz import Entry, Factorization
    from .mcg import curve_token

    text = arg if arg.lstrip().startswith("[") and arg != "-" else read_source(arg)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputParseError(f"invalid JSON factorization: {e}") from None
    if isinstance(data, dict) and "cycles" in data:
        data = [c["expr"] if isinstance(c, dict) else c for c in data["cycles"]]
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise InputParseError("a factorization is a JSON array of curve expressions")
    entries = []
    for x in data:
        src = "c" + x[1:] if x.strip().startswith("t") and x.strip()[1:].isdigit() else x
        try:
            node = parse_expression(src, genus)
            cv = evaluate_curve(node, genus)
        except (ExpressionSyntaxError, TypeError, ValueError) as e:
            raise InputParseError(f"{x!r}: {e}") from None
        if cv.base is None:
            entries.append(Entry(curve_token(cv.curve.word), MappingClass.identity(genus)))
        else:
            entries.append(Entry(cv.base, cv.conjugator))
    return Factorization(tuple(entries))


def cmd_hurwitz(args) -> int:
    from .hurwitz import hurwitz_equivalent_bounded

    f1 = load_factorization(args.f1, args.genus)
    f2 = load_factorization(args.f2, args.genus)
    res = hurwitz_equivalent_bounded(f1, f2, args.depth, args.ball)
    emit(res.to_json())
    return {"equal": EXIT_OK, "distinct": EXIT_FALSE}.get(res.verdict.status, EXIT_UNKNOWN)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hsblf", description="Dehn twist words, Hurwitz systems and SBLF descriptors.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify", help="run the built-in identity suite")
    vs = v.add_subparsers(dest="what", parser_class=_Parser)
    vs.required = True
    pl = vs.add_parser("paper-lemmas", help="twist identities, kernel facts and table self-checks")
    pl.add_argument("--only", metavar="ID", help="run a single check (or all checks with this prefix)")
    pl.add_argument("--table", metavar="FILE", help="use a twist table from a JSON file")
    pl.set_defaults(func=cmd_verify)

    s = sub.add_parser("sblf", help="SBLF descriptors")
    ss = s.add_subparsers(dest="what", parser_class=_Parser)
    ss.required = True
    ws = ss.add_parser("ws", help="emit the W_s descriptor")
    ws.add_argument("--s", type=int, required=True)
    ws.add_argument("--normalized", action="store_true", help="mark the logarithmic-transform normalization")
    ws.set_defaults(func=cmd_ws)
    va = ss.add_parser("validate", help="check the realizability criterion")
    va.add_argument("file")
    va.set_defaults(func=cmd_validate)
    inv = ss.add_parser("invariants", help="Euler characteristic, H_1 and b_2")
    inv.add_argument("file")
    inv.add_argument("--full", action="store_true", help="also report Betti numbers, cycle counts, fixed points")
    inv.set_defaults(func=cmd_invariants)

    m = sub.add_parser("mcg", help="mapping class words")
    ms = m.add_subparsers(dest="what", parser_class=_Parser)
    ms.required = True
    eq = ms.add_parser("equal", help="compare two twist words")
    eq.add_argument("e1")
    eq.add_argument("e2")
    eq.add_argument("--closed", action="store_true", help="compare in the closed surface")
    eq.add_argument("--bound", type=int, default=12)
    eq.add_argument("--genus", type=int, default=2)
    eq.set_defaults(func=cmd_mcg_equal)

    h = sub.add_parser("hurwitz", help="Hurwitz systems")
    hs = h.add_subparsers(dest="what", parser_class=_Parser)
    hs.required = True
    he = hs.add_parser("equiv", help="bounded Hurwitz equivalence search")
    he.add_argument("f1", help="JSON array of curve expressions, a file, or -")
    he.add_argument("f2")
    he.add_argument("--depth", type=int, required=True)
    he.add_argument("--ball", type=int, default=2, help="radius of the global conjugation ball")
    he.add_argument("--genus", type=int, default=2)
    he.set_defaults(func=cmd_hurwitz)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "genus", 2) < 2:
            raise UsageError("--genus must be at least 2")
        return args.func(args)
    except UsageError as e:
        print(f"hsblf: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InputParseError as e:
        print(f"hsblf: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UndeterminedError as e:
        emit({"status": "unknown", "reason": str(e)})
        return EXIT_UNKNOWN
    except WordLengthExceeded as e:
        print(f"hsblf: {e}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
