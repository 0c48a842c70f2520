"""Command-line entry point.

Exit status: 0 when every requested check passes, 1 when any fails, 2 on usage
errors such as an unknown order name.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .certify import build_certificate, table1, table_orders, write_run
from .fibration import equator_restriction, fibration_profile, loop_checks
from .golden import parse
from .orders import BUILTIN_NAMES, UnknownOrderError, builtin
from .rootshell import rank_obstruction_scan
from .shells import ShellLevelError, enumerate_shell, shell_profile, unit_shell


def _emit(args: argparse.Namespace, payload: Any, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2))
    else:
        print(text)


def _order(name: str):
    try:
        return builtin(name)
    except UnknownOrderError:
        raise SystemExit(_usage_error(f"unknown order {name!r}; choose from {', '.join(BUILTIN_NAMES)}"))


def _usage_error(msg: str) -> int:
    print(f"planeshell: error: {msg}", file=sys.stderr)
    return 2


def cmd_certify(args: argparse.Namespace) -> int:
    _order(args.order)
    cert = build_certificate(args.order, workers=args.threads, exhaustive=args.exhaustive)
    run = write_run(args.out, {f"{args.order}.cert.json": cert})
    lines = [
        f"order {args.order}: {'pass' if cert['pass'] else 'FAIL'}",
        f"  shell {cert['shell']['cardinality']}  type {cert['rootshell']['label']}",
        f"  axis {cert['plane']['axis_cardinality']}  doubling {cert['plane']['doubling_label']}",
        f"  balanced {cert['plane']['balanced_cardinality']}  fiber {cert['fibration']['fiber_size']}",
        f"  written to {run}",
    ]
    _emit(args, cert, "\n".join(lines))
    return 0 if cert["pass"] else 1


def cmd_table1(args: argparse.Namespace) -> int:
    summary, _, run = table1(args.out, workers=args.threads, with_hybrids=args.with_hybrids,
                             exhaustive=args.exhaustive)
    head = f"{'order':<16}{'ring':<6}{'|S1|':>6}{'axis':>7}{'|D|':>8}  {'doubling':<22}status"
    lines = [head, "-" * len(head)]
    for r in summary["rows"]:
        status = "ok" if r["pass"] and not r["diff"] else f"MISMATCH {r['diff']}" if r["diff"] else "FAIL"
        lines.append(f"{r['order']:<16}{r['ring']:<6}{r['shell']:>6}{r['axis']:>7}{r['balanced']:>8}  {r['label']:<22}{status}")
    lines.append(f"{summary['matched']}/{summary['total']} rows match; written to {run}")
    _emit(args, summary, "\n".join(lines))
    return 0 if summary["pass"] and summary["matched"] == summary["total"] else 1


def cmd_scan(args: argparse.Namespace) -> int:
    if args.max_m < 6:
        return _usage_error("--max-m must be at least 6")
    report = rank_obstruction_scan(args.max_m, unit_shell(builtin("icosian")))
    ok = (
        report["noncrystallographic_dihedral"] == [5]
        and report["ranks"] == [2, 3, 4]
        and not report["rank_ge_5_admissible"]
    )
    lines = [
        f"admissible dihedral m <= {args.max_m}: {report['admissible_dihedral']}",
        f"  crystallographic: {report['crystallographic_dihedral']}",
        f"  non-crystallographic: {report['noncrystallographic_dihedral']}",
        f"non-crystallographic indecomposable ranks: {report['ranks']}",
        "no indecomposable non-crystallographic rank >= 5" if not report["rank_ge_5_admissible"]
        else "rank >= 5 admissible",
    ]
    _emit(args, report, "\n".join(lines))
    return 0 if ok else 1


def cmd_fibration(args: argparse.Namespace) -> int:
    order = _order(args.order)
    eq = equator_restriction(order)
    prof = fibration_profile(order)
    loops = loop_checks(order, exhaustive=args.exhaustive)
    payload = {
        "order": args.order,
        "pairs": eq.pairs,
        "equator_failures": eq.first_failures + eq.second_failures,
        "base_size": len(prof.base),
        "fiber_size": prof.fiber_size,
        "constant": prof.constant,
        "loop": {k: v for k, v in vars(loops).items()},
        "pass": eq.passed and prof.passed and loops.passed,
    }
    lines = [
        f"{args.order}: |U| = {prof.shell_size}, {eq.pairs} pairs, base {len(prof.base)}, fiber {prof.fiber_size}",
        f"  equator failures {payload['equator_failures']}, constant fibers {prof.constant}",
        f"  Moufang on {loops.moufang_triples} triples ({'exhaustive' if loops.moufang_exhaustive else 'sampled'}): "
        f"{loops.moufang}; inverse property {loops.inverse_property}; Artin {loops.artin}",
        "pass" if payload["pass"] else "FAIL",
    ]
    _emit(args, payload, "\n".join(lines))
    return 0 if payload["pass"] else 1


def cmd_shell(args: argparse.Namespace) -> int:
    order = _order(args.order)
    try:
        text = args.level.strip()
        level = parse(json.loads(text) if text.startswith("[") else text)
        shell = enumerate_shell(order, level, workers=args.threads)
    except (ValueError, ShellLevelError) as exc:
        return _usage_error(str(exc))
    profile = shell_profile(shell)
    payload = {
        "order": args.order,
        "level": shell.level.serialize(),
        "cardinality": len(shell),
        "profile": [{"type": [c.serialize() for c in t], "count": n} for t, n in profile.items()],
        "digest": shell.digest(),
        "elements": [e.serialize() for e in shell.elements],
    }
    lines = [f"{args.order} level {shell.level}: {len(shell)} elements, digest {shell.digest()}"]
    for t, n in profile.items():
        lines.append(f"  {n:>5}  ({', '.join(str(c) for c in t)})")
    _emit(args, payload, "\n".join(lines))
    return 0


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g.add_argument("--out", default=d("runs"), help="directory for run folders (default: runs)")
    g.add_argument("--json", action="store_true", default=d(False), help="print JSON instead of text")
    g.add_argument("--threads", type=int, default=d(1), help="worker processes for enumeration")
    g.add_argument("--with-hybrids", action="store_true", default=d(False), help="include the hybrid orders in table1")
    return g


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planeshell", parents=[_global_flags(False)],
                                description=__doc__.splitlines()[0])
    # global flags are accepted after the subcommand too; SUPPRESS keeps the
    # subparser from overwriting values given before it
    common = _global_flags(True)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", parents=[common], help="full pipeline for one order")
    c.add_argument("order")
    c.add_argument("--exhaustive", action="store_true", help="all Moufang triples")
    c.set_defaults(func=cmd_certify)

    t = sub.add_parser("table1", parents=[common], help="certificates for every synoptic row")
    t.add_argument("--exhaustive", action="store_true", help="all Moufang triples")
    t.set_defaults(func=cmd_table1)

    s = sub.add_parser("scan-obstruction", parents=[common], help="dihedral totient scan and rank summary")
    s.add_argument("--max-m", type=int, default=10_000)
    s.set_defaults(func=cmd_scan)

    f = sub.add_parser("fibration", parents=[common], help="fiber profile and loop identities")
    f.add_argument("order")
    f.add_argument("--exhaustive", action="store_true", help="all Moufang triples")
    f.set_defaults(func=cmd_fibration)

    sh = sub.add_parser("shell", parents=[common], help="enumerate one norm shell")
    sh.add_argument("order")
    sh.add_argument("--level", default="1", help="norm level, e.g. 1, 2, 1+phi or [1,1]")
    sh.set_defaults(func=cmd_shell)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        return _usage_error("--threads must be positive")
    return args.func(args)


__all__ = ["build_parser", "main", "table_orders"]
