"""The ``subgrad`` command line tool.

Four subcommands over edge-list files: ``match`` (detect and list matches),
``table`` (the per-anchor reference table), ``verify`` (cross-check the
matcher against brute force), and ``dot`` (Graphviz export with matched
edges highlighted).  Exit status is 0 when something was detected (or a
verification passed), 1 when not, 2 on any input problem.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from typing import Sequence

from .graph import DirectedGraph, Edge, GraphError, parse_edge_list, validate_query
from .matcher import (
    MatchMode,
    ReferenceTable,
    canonicalize_match,
    enumerate_matches,
)
from .model_set import ModelSet, build_model_set
from .oracle import compare_matcher_oracle, run_self_test

_PROG = "subgrad"


def _fmt_seq(edges: Sequence[Edge]) -> str:
    return "".join(f"({u},{v})" for u, v in edges)


def _load_graph(path: str) -> DirectedGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_edge_list(text)
    except GraphError as exc:
        raise GraphError(f"{path}: {exc}") from None


def _prepare(args: argparse.Namespace) -> tuple[ModelSet, MatchMode, ReferenceTable]:
    if not args.query or not args.source:
        raise GraphError(f"{args.command} needs both --query and --source")
    if args.jobs < 1:
        raise GraphError("--jobs must be at least 1")
    query = _load_graph(args.query)
    source = _load_graph(args.source)
    violations = validate_query(query)
    if violations:
        detail = "; ".join(str(v) for v in violations)
        raise GraphError(f"{args.query}: invalid query graph: {detail}")
    m = build_model_set(query, args.starter)
    mode = MatchMode(args.mode)
    table = enumerate_matches(source, m, mode, jobs=args.jobs)
    return m, mode, table


def _json_doc(
    args: argparse.Namespace, m: ModelSet, mode: MatchMode, table: ReferenceTable
) -> str:
    matches = [
        {
            "anchor": match.anchor,
            "edges": [[u, v] for u, v in match.edges],
            "mapping": match.mapping,
            "canonical": _fmt_seq(canonicalize_match(match, m.shape)),
        }
        for match in table.all_matches()
    ]
    doc = {
        "query": args.query,
        "source": args.source,
        "mode": mode.value,
        "detected": table.detected,
        "count": len(matches),
        "matches": matches,
    }
    return json.dumps(doc, indent=2)


_DOT_BARE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*|[0-9]+)\Z")


def _dot_id(label: str) -> str:
    return label if _DOT_BARE.match(label) else f'"{label}"'


def _render_dot(source: DirectedGraph, highlight: frozenset[Edge]) -> str:
    lines = ["digraph G {"]
    on_an_edge = {end for edge in source.edges for end in edge}
    for label in sorted(source.nodes):
        if label not in on_an_edge:
            lines.append(f"  {_dot_id(label)};")
    for u, v in sorted(source.edges):
        attr = " [color=red,penwidth=2]" if (u, v) in highlight else ""
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)}{attr};")
    lines.append("}")
    return "\n".join(lines)


def _highlighted(table: ReferenceTable) -> frozenset[Edge]:
    return frozenset(
        edge for match in table.all_matches() for edge in match.edges
    )


def cmd_match(args: argparse.Namespace) -> int:
    m, mode, table = _prepare(args)
    if args.format == "json":
        print(_json_doc(args, m, mode, table))
    elif args.format == "dot":
        print(_render_dot(_load_graph(args.source), _highlighted(table)))
    else:
        if table.detected:
            for match in table.all_matches():
                print(_fmt_seq(match.edges))
        else:
            print("not detected")
    return 0 if table.detected else 1


def cmd_table(args: argparse.Namespace) -> int:
    if args.format == "dot":
        raise GraphError("table supports --format text or json")
    m, mode, table = _prepare(args)
    if args.format == "json":
        print(_json_doc(args, m, mode, table))
        return 0 if table.detected else 1
    for anchor, row in table.rows.items():
        entries = []
        for match in row:
            text = _fmt_seq(match.edges)
            if args.dedup:
                canonical = canonicalize_match(match, m.shape)
                if canonical != match.edges:
                    text += " = " + _fmt_seq(canonical)
            entries.append(text)
        print(f"{anchor}: " + ("; ".join(entries) if entries else "-"))
    return 0 if table.detected else 1


def cmd_dot(args: argparse.Namespace) -> int:
    _, _, table = _prepare(args)
    print(_render_dot(_load_graph(args.source), _highlighted(table)))
    return 0 if table.detected else 1


_DIFF_LIMIT = 20


def cmd_verify(args: argparse.Namespace) -> int:
    if bool(args.query) != bool(args.source):
        raise GraphError("verify needs both --query and --source, or neither")
    if args.query:
        query = _load_graph(args.query)
        source = _load_graph(args.source)
        report = compare_matcher_oracle(query, source)
        matcher_n = len(report.matcher_mappings)
        oracle_n = len(report.oracle_mappings)
        if report.passed:
            print(f"PASS {matcher_n} = {oracle_n}")
            return 0
        print(f"FAIL {matcher_n} != {oracle_n}")
        for label, group in (("missing", report.missing), ("extra", report.extra)):
            for mapping in sorted(group)[:_DIFF_LIMIT]:
                print(f"  {label}: {mapping}")
        return 1
    result = run_self_test(args.seed, args.instances)
    good = result.instances - len(result.failures)
    if result.passed:
        print(f"PASS {good}/{result.instances}")
        return 0
    print(f"FAIL {good}/{result.instances}")
    for index, report in result.failures[:_DIFF_LIMIT]:
        print(
            f"  instance {index}: {len(report.missing)} missing, "
            f"{len(report.extra)} extra"
        )
    return 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--query", "-q", metavar="PATH", help="query graph file")
    common.add_argument("--source", "-s", metavar="PATH", help="source graph file")
    common.add_argument(
        "--mode",
        choices=("injective", "homomorphic"),
        default="injective",
        help="node binding discipline (default: injective)",
    )
    common.add_argument("--starter", metavar="ID", help="override the starter node")
    common.add_argument(
        "--format",
        choices=("text", "json", "dot"),
        default="text",
        help="output format (default: text)",
    )
    common.add_argument(
        "--dedup",
        action="store_true",
        help="annotate rotated duplicates of cycle matches",
    )
    common.add_argument(
        "--jobs",
        type=int,
        default=os.cpu_count() or 1,
        metavar="N",
        help="worker threads for enumeration",
    )
    common.add_argument(
        "--seed", type=int, default=0, metavar="N", help="self-test seed"
    )
    common.add_argument(
        "--instances",
        type=int,
        default=100,
        metavar="N",
        help="self-test instance count",
    )

    parser = argparse.ArgumentParser(
        prog=_PROG,
        description="Detect a query graph inside a source graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("match", parents=[common], help="detect and list matches").set_defaults(
        func=cmd_match
    )
    sub.add_parser("table", parents=[common], help="per-anchor reference table").set_defaults(
        func=cmd_table
    )
    sub.add_parser("verify", parents=[common], help="cross-check against brute force").set_defaults(
        func=cmd_verify
    )
    sub.add_parser("dot", parents=[common], help="Graphviz export, matches highlighted").set_defaults(
        func=cmd_dot
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        print(f"{_PROG}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
