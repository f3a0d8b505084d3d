"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 unreadable or malformed
input, 3 infinite symmetric difference, 4 violated construction
constraint (improper colouring, bounds on s and k, isolated vertex).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dfa import INF, PARTIAL, TOTAL, minimise, parse_dfa, serialize_dfa, to_dot
from .distance import build_distance_forest
from .errors import (
    ColoringError,
    ConstraintError,
    DfaFormatError,
    InfiniteDifferenceError,
    PreconditionError,
    UnknownReferenceError,
)
from .hardness import (
    HYPER,
    KMIN,
    build_hyper_colored,
    build_hyper_instance,
    build_kmin_colored,
    build_kmin_instance,
    parse_coloring,
    parse_graph,
    verify_hardness,
)
from .kmin import all_k_sweep, hyper_minimise, k_minimise, sizes_for_all_k
from .product import count_symdiff, similarity_bound

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INFINITE, EXIT_CONSTRAINT = 0, 1, 2, 3, 4


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return parse_dfa(_read(path))
    except (DfaFormatError, UnknownReferenceError) as exc:
        raise _InputError(f"{path}: {exc}") from None


def _write(path: str | None, text: str):
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _render(d, fmt: str) -> str:
    return to_dot(d) if fmt == "dot" else serialize_dfa(d)


def _num(x):
    return None if x == INF else x


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=False) + "\n"


# ------------------------------------------------------------- subcommands

def cmd_minimise(args) -> int:
    d = _load(args.input)
    m = minimise(d, args.mode)
    _write(args.output, _render(m, args.format))
    print(d.num_states, m.num_states)
    return EXIT_OK


def _report_lossy(d, out, args) -> int:
    _write(args.output, _render(out, args.format))
    print(minimise(d, args.mode).num_states, out.num_states)
    print("errors", count_symdiff(d, out).errors)
    print("similarity_bound", similarity_bound(d, out))
    return EXIT_OK


def cmd_kmin(args) -> int:
    d = _load(args.input)
    return _report_lossy(d, k_minimise(d, args.k, args.mode), args)


def cmd_hypermin(args) -> int:
    d = _load(args.input)
    return _report_lossy(d, hyper_minimise(d, args.mode), args)


def cmd_sizes(args) -> int:
    d = _load(args.input)
    rows = ["k,size"] + [f"{k},{size}" for k, size in enumerate(sizes_for_all_k(d, args.mode))]
    _write(args.output or "-", "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    d = _load(args.input)
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for k, phase in all_k_sweep(d, args.mode):
        print(k, phase.num_states)
        if out_dir:
            (out_dir / f"k{k}.dfa").write_text(serialize_dfa(phase.to_dfa()))
    return EXIT_OK


def cmd_forest(args) -> int:
    d = minimise(_load(args.input), args.mode)
    f = build_distance_forest(d, args.method)
    _write(args.output or "-", f.to_dot(d.names) if args.format == "dot" else f.dump(d.names))
    return EXIT_OK


def cmd_compare(args) -> int:
    a, b = _load(args.a), _load(args.b)
    max_len = args.max_len if args.max_len == "auto" else int(args.max_len)
    count = count_symdiff(a, b, max_len)
    print(_json({
        "errors": count.errors,
        "max_error_len": count.max_error_len,
        "similarity_bound": _num(similarity_bound(a, b)),
        "finite": count.finite,
    }), end="")
    return EXIT_OK


def _instance(args):
    g = parse_graph(_read(args.graph))
    if args.family == HYPER:
        return g, build_hyper_instance(g)
    if args.s is None or args.k is None:
        raise ConstraintError("the kmin family needs --s and --k")
    return g, build_kmin_instance(g, args.s, args.k)


def _colored(args, g):
    c = parse_coloring(_read(args.coloring))
    if args.family == HYPER:
        return build_hyper_colored(g, c)
    return build_kmin_colored(g, c, args.s, args.k)


def cmd_gen(args) -> int:
    try:
        g, inst = _instance(args)
    except DfaFormatError as exc:
        raise _InputError(f"{args.graph}: {exc}") from None
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.dfa").write_text(serialize_dfa(inst.dfa))
    summary = {"family": inst.family, "instance_states": inst.dfa.num_states,
               "core_states": inst.core_states, "params": inst.params,
               "expected_errors": list(inst.expected_errors)}
    if args.coloring:
        try:
            colored = _colored(args, g)
        except DfaFormatError as exc:
            raise _InputError(f"{args.coloring}: {exc}") from None
        Path(f"{prefix}.colored.dfa").write_text(serialize_dfa(colored))
        report = verify_hardness(inst, colored).to_dict()
        Path(f"{prefix}.report.json").write_text(_json(report))
        summary["report"] = report
    print(_json(summary), end="")
    return EXIT_OK if summary.get("report", {}).get("pass", True) else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        _, inst = _instance(args)
    except DfaFormatError as exc:
        raise _InputError(f"{args.graph}: {exc}") from None
    report = verify_hardness(inst, _load(args.colored))
    print(_json(report.to_dict()), end="")
    return EXIT_OK if report.passed else EXIT_FAIL


# ------------------------------------------------------------------ parser

def _mode(p):
    p.add_argument("--mode", choices=(PARTIAL, TOTAL), default=PARTIAL,
                   help="minimality convention: partial (default) or total with a sink")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdfa",
        description="Exact and lossy DFA minimisation. DFAs use the line format "
                    "'alphabet: ...', 'states: ...', 'start: q', 'accept: ...', 'trans: src sym dst'.",
        epilog="exit codes: 0 ok, 1 verification failed, 2 bad input, "
               "3 infinite difference, 4 constraint violated")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimise", help="classical minimisation; prints 'states_before states_after'")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="write the DFA here ('-' for stdout)")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    _mode(p)
    p.set_defaults(func=cmd_minimise)

    for name, func, helptext in (
            ("kmin", cmd_kmin, "k-minimisation; prints sizes, error count and similarity bound"),
            ("hypermin", cmd_hypermin, "hyper-minimisation; prints sizes, error count and similarity bound")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input")
        if name == "kmin":
            p.add_argument("-k", type=int, required=True)
        p.add_argument("-o", "--output", help="write the DFA here ('-' for stdout)")
        p.add_argument("--format", choices=("text", "dot"), default="text")
        _mode(p)
        p.set_defaults(func=func)

    p = sub.add_parser("sizes", help="CSV 'k,size' of k-minimal DFAs for k = 0..2n")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="CSV file (default stdout)")
    _mode(p)
    p.set_defaults(func=cmd_sizes)

    p = sub.add_parser("sweep", help="all k-minimal DFAs in one pass; prints 'k states' per k")
    p.add_argument("input")
    p.add_argument("--out-dir", help="write k<K>.dfa for every k")
    _mode(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("forest", help="distance forest of the minimal DFA")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--format", choices=("text", "dot"), default="text",
                   help="text: 'id parent edge_weight level [state]' per vertex")
    p.add_argument("--method", choices=("auto", TOTAL, PARTIAL), default="auto")
    _mode(p)
    p.set_defaults(func=cmd_forest)

    p = sub.add_parser("compare", help="JSON {errors, max_error_len, similarity_bound, finite}")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-len", default="auto",
                   help="count error words up to this length, or 'auto' for all (default)")
    p.set_defaults(func=cmd_compare)

    for name, func, helptext in (
            ("gen", cmd_gen, "write a hardness instance (and its colored collapse plus a JSON report)"),
            ("verify", cmd_verify, "check a colored DFA against a regenerated instance (JSON report)")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("family", choices=(HYPER, KMIN))
        p.add_argument("graph", help="edge list, one 'u v' pair per line")
        if name == "gen":
            p.add_argument("--coloring", help="lines 'vertex colour', colour in 1..3")
            p.add_argument("--out", required=True, help="output prefix")
        else:
            p.add_argument("colored", help="colored DFA to check")
        p.add_argument("--s", type=int)
        p.add_argument("--k", type=int)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfiniteDifferenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFINITE
    except (ConstraintError, ColoringError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
