"""Command-line interface: ``substar recognize|gen|represent|verify|census``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .chordal import ChordlessCycle, build_clique_tree, is_chordal
from .forbidden import FAMILIES, FamilyTag, make_forbidden
from .graph import GraphError, induced_subgraph, parse_edge_list, parse_graph6, write_edge_list, write_graph6
from .harness import census, census_csv, format_census, verify_theorem
from .recognition import recognize
from .representation import combine_components, format_representation

EXIT_OK = 0
EXIT_NOT_SUBSTAR = 1
EXIT_NOT_CHORDAL = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="substar", description="Recognize substar graphs with certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("recognize", help="classify graphs read from FILE or stdin")
    r.add_argument("--input", choices=("g6", "edges"), default="g6")
    r.add_argument("--certificate", action="store_true", help="print the full certificate block")
    r.add_argument("--step-limit", type=int, default=None)
    r.add_argument("file")

    g = sub.add_parser("gen", help="print a member of the forbidden family")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--k", type=int, default=None)
    g.add_argument("--out", choices=("g6", "edges"), default="g6")

    rep = sub.add_parser("represent", help="print the canonical clique tree of a chordal graph")
    rep.add_argument("--input", choices=("g6", "edges"), default="g6")
    rep.add_argument("file")

    v = sub.add_parser("verify", help="check the characterization on all connected graphs up to N vertices")
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--step-limit", type=int, default=None)
    v.add_argument("--workers", type=int, default=1)

    c = sub.add_parser("census", help="count connected, chordal and substar graphs per order")
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--csv", metavar="PATH")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _graphs(text: str, fmt: str):
    if fmt == "edges":
        return [parse_edge_list(text)]
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def _recognize(args, out) -> int:
    code = EXIT_OK
    for g in _graphs(_read(args.file), args.input):
        cert = recognize(g, args.step_limit)
        print(cert.format() if args.certificate else f"RESULT {cert.kind}", file=out)
        code = max(code, cert.exit_code)
    return code


def _gen(args, out) -> int:
    if args.family != "H3" and args.k is not None:
        raise UsageError("--k applies only to --family H3")
    if args.family == "H3" and args.k is None:
        raise UsageError("--family H3 needs --k")
    try:
        family = FamilyTag(args.family, args.k)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    g = make_forbidden(family)
    print(write_graph6(g) if args.out == "g6" else write_edge_list(g).rstrip("\n"), file=out)
    return EXIT_OK


def _represent(args, out) -> int:
    code = EXIT_OK
    for g in _graphs(_read(args.file), args.input):
        res = is_chordal(g)
        if isinstance(res, ChordlessCycle):
            print(f"error: graph is not chordal; induced cycle {' '.join(map(str, res.cycle))}", file=sys.stderr)
            code = max(code, EXIT_NOT_CHORDAL)
            continue
        parts = [(comp, build_clique_tree(induced_subgraph(g, comp))) for comp in g.components()]
        print(format_representation(combine_components(parts, g.n)), file=out)
    return code


def _verify(args, out) -> int:
    try:
        report = verify_theorem(args.max_n, args.step_limit, args.workers)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    print(report.format(), file=out)
    for g6, _, _ in report.discrepancies + report.contradictions:
        print(g6, file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_NOT_SUBSTAR


def _census(args, out) -> int:
    try:
        rows = census(args.max_n)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    print(format_census(rows), file=out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(census_csv(rows))
    return EXIT_OK


_COMMANDS = {
    "recognize": _recognize,
    "gen": _gen,
    "represent": _represent,
    "verify": _verify,
    "census": _census,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
