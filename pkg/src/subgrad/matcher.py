"""Reference-set enumeration: embedding a model set into a source graph.

For one anchor node of the source graph, a match binds the model set's
starter to the anchor and then walks the model edges in order, extending
the binding one edge at a time.  Because the model set is chained, at
least one endpoint of the current edge is already bound, so each step is
either "follow successors", "follow predecessors", or "check that an edge
exists" — never a blind scan.

Rather than interpreting that step list per candidate, the module compiles
each (model set, mode) pair once into a specialized nested-loop function
over integer-indexed adjacency.  The generated code is exactly the loop a
careful hand implementation would write; compiling it keeps the inner loop
free of dispatch so enumeration stays usable on sources with hundreds of
thousands of edges.  Integer node indexes are assigned in lexicographic id
order, which makes ascending-index iteration produce matches already in
lexicographic order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable

from .graph import DirectedGraph, Edge, GraphError, NodeId, require_valid_query
from .model_set import ModelSet, QueryShape, build_model_set

CanonicalKey = tuple[Edge, ...]


class MatchMode(Enum):
    #: One-to-one node binding: a proper subgraph embedding.
    INJECTIVE = "injective"
    #: Walk semantics: source nodes may be reused freely.
    HOMOMORPHIC = "homomorphic"


class UnknownAnchorError(GraphError):
    pass


@dataclass(frozen=True)
class Match:
    """One embedding of a model set, anchored at a source node.

    ``edges`` lists the source edges in model-set order; ``mapping`` sends
    each query node to the source node it was bound to (so
    ``mapping[starter] == anchor``).
    """

    anchor: NodeId
    edges: tuple[Edge, ...]
    mapping: dict[NodeId, NodeId]


@dataclass(frozen=True)
class ReferenceTable:
    """Every match of one model set, grouped per source anchor.

    ``rows`` holds one entry per source node in lexicographic order, empty
    rows included — "no reference set here" is part of the answer.
    ``canonical_groups`` buckets the same matches by canonical key, which
    collapses the rotated duplicates a cycle query produces.
    """

    rows: dict[NodeId, tuple[Match, ...]]
    detected: bool
    canonical_groups: dict[CanonicalKey, tuple[Match, ...]]

    @property
    def total_count(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def all_matches(self) -> Iterable[Match]:
        for row in self.rows.values():
            yield from row


# ---- model-set compilation ----


def _build_steps(m: ModelSet) -> tuple[tuple[NodeId, ...], tuple[tuple, ...]]:
    """Assign one integer slot per query node (starter first, then in order
    of first appearance) and reduce each model edge to an opcode."""
    slot_of: dict[NodeId, int] = {m.starter: 0}
    var_nodes: list[NodeId] = [m.starter]
    steps: list[tuple] = []

    def new_slot(q: NodeId) -> int:
        slot_of[q] = len(var_nodes)
        var_nodes.append(q)
        return slot_of[q]

    for u, v in m.edges:
        have_u, have_v = u in slot_of, v in slot_of
        if have_u and have_v:
            steps.append(("check", slot_of[u], slot_of[v]))
        elif have_u:
            steps.append(("succ", slot_of[u], new_slot(v)))
        elif have_v:
            steps.append(("pred", slot_of[v], new_slot(u)))
        else:
            # Unreachable for chained model sets with the starter on an
            # edge, but cheap to support: scan every source edge.
            steps.append(("scan", new_slot(u), new_slot(v)))
    return tuple(var_nodes), tuple(steps)


_IND = "    "


def _emit_source(
    steps: tuple[tuple, ...], n_slots: int, injective: bool, first_only: bool
) -> str:
    lines = ["def _run(x0, succ, pred, adj, nodes, out):"]
    if not first_only:
        lines.append(_IND + "append = out.append if out is not None else None")
        lines.append(_IND + "n = 0")
    depth = 1
    bound = [0]

    def guard(slot: int, against: list[int]) -> None:
        # Injectivity: the new binding must differ from every earlier one.
        if injective and against:
            cond = " or ".join(f"x{slot} == x{c}" for c in against)
            lines.append(_IND * (depth + 1) + f"if {cond}:")
            lines.append(_IND * (depth + 2) + "continue")

    for step in steps:
        kind = step[0]
        if kind == "succ":
            src, new = step[1], step[2]
            lines.append(_IND * depth + f"for x{new} in succ[x{src}]:")
            guard(new, bound)
            depth += 1
            bound.append(new)
        elif kind == "pred":
            dst, new = step[1], step[2]
            lines.append(_IND * depth + f"for x{new} in pred[x{dst}]:")
            guard(new, bound)
            depth += 1
            bound.append(new)
        elif kind == "check":
            src, dst = step[1], step[2]
            lines.append(_IND * depth + f"if x{dst} in adj[x{src}]:")
            depth += 1
        else:
            a, b = step[1], step[2]
            lines.append(_IND * depth + f"for x{a} in nodes:")
            guard(a, bound)
            depth += 1
            bound.append(a)
            lines.append(_IND * depth + f"for x{b} in succ[x{a}]:")
            guard(b, bound)
            depth += 1
            bound.append(b)

    body = _IND * depth
    if first_only:
        lines.append(body + "return 1")
        lines.append(_IND + "return 0")
    else:
        lines.append(body + "n += 1")
        lines.append(body + "if append is not None:")
        slots = ", ".join(f"x{i}" for i in range(n_slots))
        lines.append(body + _IND + f"append(({slots}))")
        lines.append(_IND + "return n")
    return "\n".join(lines)


@lru_cache(maxsize=128)
def _runner(
    m: ModelSet, injective: bool, first_only: bool
) -> tuple[tuple[NodeId, ...], Callable]:
    var_nodes, steps = _build_steps(m)
    source = _emit_source(steps, len(var_nodes), injective, first_only)
    namespace: dict = {}
    exec(compile(source, "<model-set loop>", "exec"), namespace)
    return var_nodes, namespace["_run"]


class _SourceIndex:
    """Integer-indexed adjacency of a source graph, in lexicographic id
    order so that index order and id order agree."""

    __slots__ = ("labels", "index", "succ", "pred", "adj", "nodes")

    def __init__(self, g: DirectedGraph):
        self.labels = tuple(sorted(g.nodes))
        self.index = {label: i for i, label in enumerate(self.labels)}
        succ: list[list[int]] = [[] for _ in self.labels]
        pred: list[list[int]] = [[] for _ in self.labels]
        for u, v in g.edges:
            succ[self.index[u]].append(self.index[v])
            pred[self.index[v]].append(self.index[u])
        self.succ = tuple(tuple(sorted(vs)) for vs in succ)
        self.pred = tuple(tuple(sorted(us)) for us in pred)
        self.adj = tuple(frozenset(vs) for vs in self.succ)
        self.nodes = range(len(self.labels))


def _matches_at(
    idx: _SourceIndex, m: ModelSet, anchor: NodeId, mode: MatchMode
) -> tuple[Match, ...]:
    var_nodes, run = _runner(m, mode is MatchMode.INJECTIVE, False)
    out: list[tuple[int, ...]] = []
    run(idx.index[anchor], idx.succ, idx.pred, idx.adj, idx.nodes, out)
    labels = idx.labels
    matches = []
    for slots in out:
        binding = {q: labels[s] for q, s in zip(var_nodes, slots)}
        edges = tuple((binding[u], binding[v]) for u, v in m.edges)
        mapping = dict(sorted(binding.items()))
        matches.append(Match(anchor=anchor, edges=edges, mapping=mapping))
    # Generation order is already lexicographic; sorting again costs little
    # and keeps the ordering contract independent of the loop details.
    matches.sort(key=lambda match: match.edges)
    return tuple(matches)


# ---- public operations ----


def match_at_anchor(
    source: DirectedGraph,
    m: ModelSet,
    anchor: NodeId,
    mode: MatchMode = MatchMode.INJECTIVE,
) -> tuple[Match, ...]:
    """All matches of *m* whose starter binds to *anchor*, sorted
    lexicographically by edge sequence."""
    if anchor not in source:
        raise UnknownAnchorError(f"{anchor!r} is not a node of the source graph")
    return _matches_at(_SourceIndex(source), m, anchor, mode)


def enumerate_matches(
    source: DirectedGraph,
    m: ModelSet,
    mode: MatchMode = MatchMode.INJECTIVE,
    jobs: int = 1,
) -> ReferenceTable:
    """Build the full reference table of *m* over *source*.

    With ``jobs > 1`` anchors are fanned out across a thread pool; rows are
    merged back in id order, so the result is byte-for-byte independent of
    scheduling (and of ``jobs`` itself).
    """
    idx = _SourceIndex(source)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(lambda a: _matches_at(idx, m, a, mode), idx.labels)
            )
    else:
        results = [_matches_at(idx, m, a, mode) for a in idx.labels]
    rows = dict(zip(idx.labels, results))
    groups: dict[CanonicalKey, list[Match]] = {}
    for label in idx.labels:
        for match in rows[label]:
            groups.setdefault(canonicalize_match(match, m.shape), []).append(match)
    return ReferenceTable(
        rows=rows,
        detected=any(rows.values()),
        canonical_groups={key: tuple(ms) for key, ms in groups.items()},
    )


def count_matches(
    source: DirectedGraph,
    m: ModelSet,
    mode: MatchMode = MatchMode.INJECTIVE,
) -> int:
    """Total match count over all anchors, without materializing matches.

    Same enumeration as :func:`enumerate_matches`, minus the per-match
    objects; use this for large sources where the table itself would
    dwarf the graph.
    """
    _, run = _runner(m, mode is MatchMode.INJECTIVE, False)
    idx = _SourceIndex(source)
    return sum(
        run(a, idx.succ, idx.pred, idx.adj, idx.nodes, None) for a in idx.nodes
    )


def detected(
    source: DirectedGraph,
    query: DirectedGraph,
    mode: MatchMode = MatchMode.INJECTIVE,
) -> bool:
    """True when at least one reference set for *query* exists in *source*.

    Uses the default starter; stops at the first match found.
    """
    require_valid_query(query)
    m = build_model_set(query)
    _, run = _runner(m, mode is MatchMode.INJECTIVE, True)
    idx = _SourceIndex(source)
    return any(
        run(a, idx.succ, idx.pred, idx.adj, idx.nodes, None) for a in idx.nodes
    )


def canonicalize_match(match: Match, shape: QueryShape) -> CanonicalKey:
    """A key equal across anchor-rotated variants of the same cycle match.

    Cycle matches rotate so the lexicographically smallest source node
    leads (ties, possible only with repeated nodes in homomorphic mode,
    break by whole-sequence comparison).  Everything else is keyed by its
    edge sequence unchanged.
    """
    edges = match.edges
    if shape is not QueryShape.CYCLE or len(edges) < 2:
        return edges
    smallest = min(u for u, _ in edges)
    best: CanonicalKey | None = None
    for i, (u, _) in enumerate(edges):
        if u == smallest:
            rotated = edges[i:] + edges[:i]
            if best is None or rotated < best:
                best = rotated
    assert best is not None
    return best


def count_walks(source: DirectedGraph, anchor: NodeId, length: int) -> int:
    """Number of directed walks of exactly *length* edges leaving *anchor*.

    This is the anchor's row sum of the length-th power of the adjacency
    matrix, computed here as repeated vector–matrix products in exact
    integer arithmetic.  Deliberately a different route than the matcher:
    it aggregates counts instead of enumerating bindings, which makes it a
    useful independent check for homomorphic path matching.
    """
    if anchor not in source:
        raise UnknownAnchorError(f"{anchor!r} is not a node of the source graph")
    if length < 1:
        raise GraphError("walk length must be at least 1")
    weights: dict[NodeId, int] = {anchor: 1}
    for _ in range(length):
        step: dict[NodeId, int] = {}
        for node, weight in weights.items():
            for succ in source.successors(node):
                step[succ] = step.get(succ, 0) + weight
        weights = step
    return sum(weights.values())
