"""Model sets: the ordered edge form a query graph is matched in.

A model set lists the query's edges exactly once each, re-ordered so that
every edge after the first touches a node already covered by the edges
before it.  The matcher walks this list front to back, so the ordering is
what lets it extend one partial embedding instead of juggling disconnected
fragments.  Construction is deterministic: same query, same starter, same
model set, always.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .graph import (
    DirectedGraph,
    Edge,
    GraphError,
    NodeId,
    require_valid_query,
)


class QueryShape(Enum):
    SINGLE_EDGE = "single-edge"
    PATH = "path"
    CYCLE = "cycle"
    GENERAL = "general"


class UnknownStarterError(GraphError):
    pass


class InvalidStarterError(GraphError):
    pass


@dataclass(frozen=True)
class ModelSet:
    """An ordered, chained edge listing of one query graph.

    ``middle_elements`` are the nodes that occur as the target of some
    listed edge and as the source of a later-or-equal one, the starter
    excluded; they are exactly the interior stitch points the matcher must
    carry between edges.
    """

    starter: NodeId
    edges: tuple[Edge, ...]
    shape: QueryShape
    middle_elements: frozenset[NodeId] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if not self.edges:
            raise GraphError("a model set needs at least one edge")
        if len(set(self.edges)) != len(self.edges):
            raise GraphError("a model set cannot repeat an edge")
        covered: set[NodeId] = set(self.edges[0])
        for u, v in self.edges[1:]:
            if u == v:
                raise GraphError("query edges cannot be self-loops")
            if u not in covered and v not in covered:
                raise GraphError(
                    f"edge ({u}, {v}) does not chain onto the edges before it"
                )
            covered.update((u, v))
        if self.edges[0][0] == self.edges[0][1]:
            raise GraphError("query edges cannot be self-loops")
        if self.starter not in covered:
            raise GraphError(f"starter {self.starter!r} is not on any edge")
        if self.shape is QueryShape.CYCLE:
            if self.edges[0][0] != self.starter or self.edges[-1][1] != self.starter:
                raise GraphError(
                    "a cycle model set must leave from and return to its starter"
                )
        object.__setattr__(self, "middle_elements", self._find_middles())

    def _find_middles(self) -> frozenset[NodeId]:
        sources_at = [u for u, _ in self.edges]
        middles: set[NodeId] = set()
        for i, (_, v) in enumerate(self.edges):
            if v == self.starter:
                continue
            if v in sources_at[i:]:
                middles.add(v)
        return frozenset(middles)


def classify_shape(g: DirectedGraph) -> QueryShape:
    """Classify a valid query by its degree profile.

    Degrees plus weak connectivity (which validation already guarantees)
    pin the shape down exactly: no traversal needed.
    """
    require_valid_query(g)
    if g.n == 2 and len(g.edges) == 1:
        return QueryShape.SINGLE_EDGE
    profile = [(g.in_degree(u), g.out_degree(u)) for u in g.nodes]
    if (
        len(g.edges) == g.n - 1
        and profile.count((0, 1)) == 1
        and profile.count((1, 0)) == 1
        and profile.count((1, 1)) == g.n - 2
    ):
        return QueryShape.PATH
    if all(pair == (1, 1) for pair in profile):
        return QueryShape.CYCLE
    return QueryShape.GENERAL


def _chain_head(g: DirectedGraph) -> NodeId:
    heads = [u for u in g.nodes if g.in_degree(u) == 0]
    assert len(heads) == 1, "a directed chain has exactly one head"
    return heads[0]


def select_starter(g: DirectedGraph, override: NodeId | None = None) -> NodeId:
    """Pick the node a model set is grown from.

    With no override: a single edge starts at its source, a path at its
    chain head, and a cycle or general query at the lexicographically
    smallest node that has an outgoing edge.  An override is honored when
    it is a node of *g* with at least one outgoing edge (and, for paths,
    the chain head — anywhere else the edge listing could not stay
    chained without flipping directions).
    """
    require_valid_query(g)
    shape = classify_shape(g)
    if override is not None:
        if override not in g:
            raise UnknownStarterError(f"{override!r} is not a node of the query")
        if g.out_degree(override) == 0:
            raise InvalidStarterError(
                f"starter {override!r} has no outgoing edge"
            )
        if shape in (QueryShape.PATH, QueryShape.SINGLE_EDGE):
            head = _chain_head(g)
            if override != head:
                raise InvalidStarterError(
                    f"a path query must start at its head {head!r}"
                )
        return override
    if shape in (QueryShape.PATH, QueryShape.SINGLE_EDGE):
        return _chain_head(g)
    return min(u for u in g.nodes if g.out_degree(u) > 0)


def build_model_set(g: DirectedGraph, starter: NodeId | None = None) -> ModelSet:
    """Build the model set of *g*, grown from *starter*.

    The edge order is fixed by a depth-first walk of the underlying
    undirected structure: at each node outgoing edges come before incoming
    ones, ties inside each group break by the neighbor's id, and every
    edge is emitted once, with its original direction, at the moment the
    walk first crosses it.
    """
    require_valid_query(g)
    start = select_starter(g, starter)
    emitted: set[Edge] = set()
    order: list[Edge] = []
    visited: set[NodeId] = set()

    def visit(u: NodeId) -> None:
        visited.add(u)
        for v in g.successors(u):
            if (u, v) not in emitted:
                emitted.add((u, v))
                order.append((u, v))
                if v not in visited:
                    visit(v)
        for w in g.predecessors(u):
            if (w, u) not in emitted:
                emitted.add((w, u))
                order.append((w, u))
                if w not in visited:
                    visit(w)

    visit(start)
    return ModelSet(starter=start, edges=tuple(order), shape=classify_shape(g))
