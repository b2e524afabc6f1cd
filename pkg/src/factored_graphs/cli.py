"""Command line entry point ``fg``.

Exit codes: 0 success or "yes", 1 a clean "no", 2 usage or validation
error, 3 a size guard fired.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from .cliques import count_cliques_fpt, count_cliques_naive
from .core import complexity, components, dim, format_tuple, parse_tuple
from .dsl import parse
from .errors import FgError, ValidationError
from .explicit import materialize, to_dot, to_edge_list
from .implicit import DEFAULT_VERTEX_CAP, adjacent, out_neighbors
from .lfmis import lfmis_member
from .reach import DEFAULT_STATE_CAP, reach
from .reductions import (compile_kov_reach, compile_ntm_reach, compile_tm_lfmis, parse_kov,
                         parse_ntm, parse_tm, read_query, simulate_tm, solve_kov_brute)

YES, NO = 0, 1


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}") from None


def _load(args):
    doc = parse(_read(args.file))
    return doc, doc.formula(args.formula)


def _decide(answer: bool) -> int:
    print("yes" if answer else "no")
    return YES if answer else NO


def _cap(value: int) -> Optional[int]:
    return None if value <= 0 else value


def cmd_check(args) -> int:
    doc = parse(_read(args.file))
    if args.formula is not None:
        names = [args.formula]
        doc.formula(args.formula)
    elif len(doc.formulas) > 1:
        names = list(doc.formulas)
    else:
        names = [None]
    for name in names:
        f = doc.formula(name)
        comps = components(f)
        dims = sorted(dim(c) for c in comps)
        line = f"{complexity(f)}, components={len(comps)}, dims=[{','.join(map(str, dims))}]"
        print(f"{name}: {line}" if name is not None and args.formula is None else line)
    return 0


def cmd_materialize(args) -> int:
    _, f = _load(args)
    g = materialize(f, _cap(args.max_vertices))
    sys.stdout.write(to_dot(g) if args.format == "dot" else to_edge_list(g))
    return 0


def cmd_adjacent(args) -> int:
    _, f = _load(args)
    return _decide(adjacent(f, parse_tuple(args.u), parse_tuple(args.v)))


def cmd_neighbors(args) -> int:
    _, f = _load(args)
    for w in sorted(out_neighbors(f, parse_tuple(args.v))):
        print(format_tuple(w))
    return 0


def _query_vertex(args, key):
    value = getattr(args, key)
    if value is not None:
        return parse_tuple(value)
    if args.query is None:
        raise ValidationError(f"--{key} is required (or pass --query)")
    _, q = read_query(_read(args.query))
    if key == "member":
        key = "target"
    if key not in q:
        raise ValidationError(f"query file has no {key} line")
    return q[key]


def _with_query_formula(args):
    if args.formula is None and args.query is not None:
        args.formula, _ = read_query(_read(args.query))
    return _load(args)


def cmd_lfmis(args) -> int:
    _, f = _with_query_formula(args)
    v = _query_vertex(args, "member")
    return _decide(lfmis_member(f, v, engine=args.engine, max_vertices=_cap(args.max_vertices)))


def cmd_cliques(args) -> int:
    _, f = _load(args)
    if args.method == "naive":
        res = count_cliques_naive(f, args.s, _cap(args.max_vertices))
    else:
        res = count_cliques_fpt(f, args.s)
    print(res.total)
    return 0


def cmd_reach(args) -> int:
    _, f = _with_query_formula(args)
    src, dst = _query_vertex(args, "src"), _query_vertex(args, "dst")
    return _decide(reach(f, src, dst, method=args.method, max_states=_cap(args.max_states),
                         max_vertices=_cap(args.max_vertices)))


def _emit(inst, prefix):
    inst.check()
    for path in inst.write(prefix):
        print(path)
    return 0


def cmd_compile_kov(args) -> int:
    return _emit(compile_kov_reach(parse_kov(_read(args.file))), args.out)


def cmd_compile_tm_lfmis(args) -> int:
    return _emit(compile_tm_lfmis(parse_tm(_read(args.file)), args.input, max_T=args.max_t),
                 args.out)


def cmd_compile_ntm_reach(args) -> int:
    return _emit(compile_ntm_reach(parse_ntm(_read(args.file)), args.input), args.out)


def cmd_simulate_tm(args) -> int:
    trace = simulate_tm(parse_tm(_read(args.file)), args.input, max_steps=args.max_steps)
    if args.trace:
        for row in trace.rows:
            print(" ".join(f"{q}/{a}" for q, a in row), file=sys.stderr)
    return _decide(trace.accept)


def cmd_solve_kov(args) -> int:
    return _decide(solve_kov_brute(parse_kov(_read(args.file))))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fg", description="Factored graph toolkit.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def fg_cmd(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help=".fg document")
        sp.add_argument("--formula", help="formula name (default: the last one)")
        sp.set_defaults(func=func)
        return sp

    fg_cmd("check", cmd_check, "print complexity, component count and dimensions")
    sp = fg_cmd("materialize", cmd_materialize, "write the explicit graph")
    sp.add_argument("--max-vertices", type=int, default=DEFAULT_VERTEX_CAP)
    sp.add_argument("--format", choices=["edges", "dot"], default="edges")
    sp = fg_cmd("adjacent", cmd_adjacent, "is (u, v) an edge?")
    sp.add_argument("u")
    sp.add_argument("v")
    sp = fg_cmd("neighbors", cmd_neighbors, "list out-neighbors of a vertex")
    sp.add_argument("v")
    sp = fg_cmd("lfmis", cmd_lfmis, "is a vertex in the LFMIS?")
    sp.add_argument("--member", help="query vertex, e.g. [0,3,1]")
    sp.add_argument("--query", help="query file written by compile-tm-lfmis")
    sp.add_argument("--engine", choices=["implicit", "materialize"], default="implicit")
    sp.add_argument("--max-vertices", type=int, default=DEFAULT_VERTEX_CAP)
    sp = fg_cmd("cliques", cmd_cliques, "count s-cliques")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--method", choices=["fpt", "naive"], default="fpt")
    sp.add_argument("--max-vertices", type=int, default=DEFAULT_VERTEX_CAP)
    sp = fg_cmd("reach", cmd_reach, "is dst reachable from src?")
    sp.add_argument("--src")
    sp.add_argument("--dst")
    sp.add_argument("--query", help="query file written by compile-kov or compile-ntm-reach")
    sp.add_argument("--method", choices=["implicit", "explicit", "auto"], default="auto")
    sp.add_argument("--max-states", type=int, default=DEFAULT_STATE_CAP)
    sp.add_argument("--max-vertices", type=int, default=DEFAULT_VERTEX_CAP)

    sp = sub.add_parser("compile-kov", help="compile a .kov instance to reachability")
    sp.add_argument("file")
    sp.add_argument("--out", required=True, help="output prefix")
    sp.set_defaults(func=cmd_compile_kov)
    sp = sub.add_parser("compile-tm-lfmis", help="compile a .tm run to LFMIS membership")
    sp.add_argument("file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--out", required=True, help="output prefix")
    sp.add_argument("--max-t", type=int, default=4096)
    sp.set_defaults(func=cmd_compile_tm_lfmis)
    sp = sub.add_parser("compile-ntm-reach", help="compile a .ntm run to reachability")
    sp.add_argument("file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--out", required=True, help="output prefix")
    sp.set_defaults(func=cmd_compile_ntm_reach)
    sp = sub.add_parser("simulate-tm", help="run a .tm machine on an input")
    sp.add_argument("file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--max-steps", type=int, default=100_000)
    sp.add_argument("--trace", action="store_true", help="print the configuration rows to stderr")
    sp.set_defaults(func=cmd_simulate_tm)
    sp = sub.add_parser("solve-kov", help="brute-force a .kov instance")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_solve_kov)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FgError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
