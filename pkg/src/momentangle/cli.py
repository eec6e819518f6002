"""Command-line entry point: ``momentangle <command> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage,
parse or limit errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .checks import (
    BETTI_LIMIT,
    CUP_LIMIT,
    Report,
    cmd_betti,
    cmd_check_golod,
    cmd_check_htype,
    cmd_check_panov,
    cmd_check_stack_invariance,
    cmd_cup,
    plain,
)
from .complex import ComplexError, SimplicialComplex, boundary_complex, delete_vertex, from_json
from .homology import parse_coeffs
from .polytopes import (
    HTYPE_MODES,
    build_htype,
    build_lhat,
    build_stacked,
    disjoint_points,
    htype_choices,
    random_history,
)


class UsageError(Exception):
    pass


def _common(limit_default: int | None) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report (default)")
    out.add_argument("--table", dest="fmt", action="store_const", const="table", help="aligned table")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed-time fields")
    p.add_argument("--seed", type=int, default=0)
    if limit_default is not None:
        p.add_argument("--limit-m", type=int, default=limit_default, help=f"vertex limit (default {limit_default})")
    p.set_defaults(fmt="json")
    return p


def _field(spec: str) -> int:
    ring = parse_coeffs(spec)
    if ring is None:
        raise UsageError("cup products need field coefficients (q, f2 or fp:<p>)")
    return ring


def _read_complex(path: str) -> SimplicialComplex:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return from_json(text)


def _vertex_set(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}; use e.g. 1,3") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="momentangle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a complex as JSON")
    gsub = gen.add_subparsers(dest="family", required=True)
    post = argparse.ArgumentParser(add_help=False)
    post.add_argument("--boundary", action="store_true", help="emit the boundary complex")
    post.add_argument("--delete", type=int, default=None, metavar="V", help="then delete vertex V")
    g = gsub.add_parser("lhat", parents=[post])
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--ell", type=int, required=True)
    g = gsub.add_parser("points")
    g.add_argument("--ell", type=int, required=True)
    g = gsub.add_parser("stacked", parents=[post])
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--ell", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g = gsub.add_parser("htype")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--ell", type=int, required=True)
    g.add_argument("--mode", choices=HTYPE_MODES, default="chain")
    g.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("betti", parents=[_common(BETTI_LIMIT)], help="reduced cohomology, optionally of Z_K")
    p.add_argument("complex", help="JSON complex file, or - for stdin")
    p.add_argument("--coeffs", default="z")
    p.add_argument("--zk", action="store_true")

    p = sub.add_parser("cup", parents=[_common(CUP_LIMIT)], help="products of classes on supports I and J")
    p.add_argument("complex")
    p.add_argument("--I", dest="I", required=True, help="comma-separated vertex labels")
    p.add_argument("--J", dest="J", required=True)
    p.add_argument("--coeffs", default="q")

    p = sub.add_parser("check-panov", parents=[_common(CUP_LIMIT)])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--coeffs", default="q")

    p = sub.add_parser("check-golod", parents=[_common(CUP_LIMIT)])
    p.add_argument("complex")
    p.add_argument("--coeffs", default="q")

    p = sub.add_parser("check-stack-invariance", parents=[_common(BETTI_LIMIT)])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)

    p = sub.add_parser("check-htype", parents=[_common(BETTI_LIMIT)])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--mode", choices=HTYPE_MODES, default="chain")
    return parser


def _gen(args) -> SimplicialComplex:
    if args.family == "points":
        return disjoint_points(args.ell)
    if args.family == "htype":
        choices = htype_choices(args.k, args.ell, args.mode, random.Random(args.seed))
        return build_htype(args.k, args.ell, choices)
    if args.family == "lhat":
        K = build_lhat(args.d, args.ell)
    else:
        K = build_stacked(random_history(args.d, args.ell, random.Random(args.seed)))
    if args.boundary:
        K = boundary_complex(K)
    if args.delete is not None:
        K = delete_vertex(K, args.delete)
    return K


def _run(args) -> Report:
    c = args.command
    if c == "betti":
        return cmd_betti(_read_complex(args.complex), args.coeffs, args.zk, args.limit_m)
    if c == "cup":
        return cmd_cup(_read_complex(args.complex), _vertex_set(args.I), _vertex_set(args.J), _field(args.coeffs), args.limit_m)
    if c == "check-panov":
        return cmd_check_panov(args.d, args.ell, _field(args.coeffs), args.limit_m)
    if c == "check-golod":
        return cmd_check_golod(_read_complex(args.complex), _field(args.coeffs), args.limit_m)
    if c == "check-stack-invariance":
        return cmd_check_stack_invariance(args.d, args.ell, args.trials, args.seed, args.limit_m)
    if c == "check-htype":
        return cmd_check_htype(args.k, args.ell, args.mode, args.seed, args.limit_m)
    raise UsageError(f"unknown command {c}")


def _cell(x) -> str:
    return x if isinstance(x, str) else json.dumps(plain(x))


def render_table(report: Report, timing: bool = True) -> str:
    head = ["check", "expected", "actual", "pass"] + (["seconds"] if timing else [])
    rows = [
        [c.name, _cell(c.expected), _cell(c.actual), "PASS" if c.passed else "FAIL"]
        + ([f"{c.elapsed:.3f}"] if timing else [])
        for c in report.checks
    ]
    lines = [f"# {report.command} {json.dumps(plain(report.parameters))}"]
    if rows:
        widths = [max(len(r[i]) for r in rows + [head]) for i in range(len(head))]
        lines.append("  ".join(h.ljust(w) for h, w in zip(head, widths)))
        lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in rows]
    for key, value in report.data.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            lines += ["  " + json.dumps(plain(v)) for v in value]
        else:
            lines.append(f"{key}: {json.dumps(plain(value))}")
    lines.append("overall: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            print(_gen(args).to_json())
            return 0
        report = _run(args)
    except (ComplexError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    timing = not args.no_timing
    if args.fmt == "table":
        print(render_table(report, timing))
    else:
        print(json.dumps(report.to_dict(timing), indent=2))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
