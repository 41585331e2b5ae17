"""Directed graph model, adjacency matrices, and the edge-list file format.

Node identifiers are non-empty strings over ``[A-Za-z0-9_-]``.  The literal
word ``node`` is reserved by the file format (it introduces an isolated-node
declaration) and is therefore not a legal identifier.  All deterministic
ordering in this package is plain lexicographic byte order over identifiers.

The edge-list format is a line-oriented UTF-8 text format:

* ``#`` starts a comment that runs to the end of the line,
* blank lines are ignored,
* ``<src> <dst>`` declares one directed edge (any mix of spaces and tabs),
* ``node <id>`` declares a node that has no incident edges.

Duplicate edge lines and duplicate node declarations are errors, not
warnings; silently collapsing them tends to hide typos in hand-written
graph files.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable

NodeId = str
Edge = tuple[NodeId, NodeId]

_NODE_ID_RE = re.compile(r"[A-Za-z0-9_-]+\Z")

#: Reserved by the file format; see the module docstring.
RESERVED_WORD = "node"


class GraphError(Exception):
    """Base class for every error raised by this package."""


class EmptyGraphError(GraphError):
    """A graph (or a graph file) declared no nodes at all."""


class MalformedLineError(GraphError):
    """An edge-list line that is neither an edge, a node declaration,
    a comment, nor blank."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class DuplicateEdgeError(GraphError):
    pass


class DuplicateNodeError(GraphError):
    pass


class OrderMismatchError(GraphError):
    """A requested matrix row order is not a permutation of the node set."""


class NonSquareMatrixError(GraphError):
    pass


class NonBinaryCellError(GraphError):
    pass


def check_node_id(label: str) -> NodeId:
    """Return *label* unchanged if it is a legal node identifier.

    Raises GraphError otherwise.  Legal identifiers are non-empty strings
    over ``[A-Za-z0-9_-]``, excluding the reserved word ``node``.
    """
    if not isinstance(label, str) or not _NODE_ID_RE.match(label):
        raise GraphError(f"invalid node id {label!r}: expected [A-Za-z0-9_-]+")
    if label == RESERVED_WORD:
        raise GraphError(f"invalid node id {label!r}: reserved word")
    return label


@dataclass(frozen=True)
class DirectedGraph:
    """An immutable directed graph.

    ``nodes`` keeps declaration order (it matters for serialization and for
    matrix row order); ``edges`` is an unordered set of ``(src, dst)`` pairs.
    Self-loops are representable, duplicate edges are not.
    """

    nodes: tuple[NodeId, ...]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", frozenset(self.edges))
        if not self.nodes:
            raise EmptyGraphError("a graph needs at least one node")
        seen: set[NodeId] = set()
        for label in self.nodes:
            check_node_id(label)
            if label in seen:
                raise DuplicateNodeError(f"duplicate node {label!r}")
            seen.add(label)
        for edge in self.edges:
            u, v = edge
            if u not in seen or v not in seen:
                raise GraphError(f"edge ({u!r}, {v!r}) references an undeclared node")

    # ---- queries ----

    @property
    def n(self) -> int:
        return len(self.nodes)

    def __contains__(self, label: object) -> bool:
        return label in self._node_set

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return (u, v) in self.edges

    def successors(self, u: NodeId) -> tuple[NodeId, ...]:
        """Targets of edges leaving *u*, in lexicographic order."""
        return self._succ[u]

    def predecessors(self, v: NodeId) -> tuple[NodeId, ...]:
        """Sources of edges entering *v*, in lexicographic order."""
        return self._pred[v]

    def out_degree(self, u: NodeId) -> int:
        return len(self._succ[u])

    def in_degree(self, v: NodeId) -> int:
        return len(self._pred[v])

    def self_loop_nodes(self) -> tuple[NodeId, ...]:
        return tuple(sorted(u for u, v in self.edges if u == v))

    def is_weakly_connected(self) -> bool:
        """True when every node is reachable from every other one once edge
        direction is ignored."""
        stack = [self.nodes[0]]
        seen = {self.nodes[0]}
        while stack:
            u = stack.pop()
            for w in self._succ[u] + self._pred[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    # ---- cached adjacency ----

    @cached_property
    def _node_set(self) -> frozenset[NodeId]:
        return frozenset(self.nodes)

    @cached_property
    def _succ(self) -> dict[NodeId, tuple[NodeId, ...]]:
        out: dict[NodeId, list[NodeId]] = {u: [] for u in self.nodes}
        for u, v in self.edges:
            out[u].append(v)
        return {u: tuple(sorted(vs)) for u, vs in out.items()}

    @cached_property
    def _pred(self) -> dict[NodeId, tuple[NodeId, ...]]:
        inc: dict[NodeId, list[NodeId]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            inc[v].append(u)
        return {v: tuple(sorted(us)) for v, us in inc.items()}


@dataclass(frozen=True)
class AdjacencyMatrix:
    """A 0/1 matrix over an explicit row (= column) order."""

    order: tuple[NodeId, ...]
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "cells", tuple(tuple(row) for row in self.cells))
        if not self.order:
            raise EmptyGraphError("a matrix needs at least one row")
        seen: set[NodeId] = set()
        for label in self.order:
            check_node_id(label)
            if label in seen:
                raise DuplicateNodeError(f"duplicate label {label!r} in matrix order")
            seen.add(label)
        n = len(self.order)
        if len(self.cells) != n or any(len(row) != n for row in self.cells):
            raise NonSquareMatrixError(
                f"expected a {n}x{n} matrix for {n} labels"
            )
        for row in self.cells:
            for cell in row:
                if cell not in (0, 1):
                    raise NonBinaryCellError(f"cell value {cell!r} is not 0 or 1")

    @property
    def n(self) -> int:
        return len(self.order)


def parse_edge_list(text: str) -> DirectedGraph:
    """Parse the edge-list format described in the module docstring.

    Node order in the result is first-appearance order: a ``node`` line or
    the first edge line mentioning an identifier declares it.  Raises
    EmptyGraphError for input that declares nothing, MalformedLineError
    (with the 1-based line number) for unparseable lines, DuplicateEdgeError
    and DuplicateNodeError for repeated declarations.
    """
    nodes: list[NodeId] = []
    known: set[NodeId] = set()
    edges: set[Edge] = set()

    def declare(label: str, lineno: int) -> NodeId:
        try:
            check_node_id(label)
        except GraphError as exc:
            raise MalformedLineError(lineno, str(exc)) from None
        if label not in known:
            known.add(label)
            nodes.append(label)
        return label

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == RESERVED_WORD:
            if len(tokens) != 2:
                raise MalformedLineError(
                    lineno, f"expected 'node <id>', got {line!r}"
                )
            label = tokens[1]
            if label in known:
                raise DuplicateNodeError(
                    f"line {lineno}: node {label!r} declared twice"
                )
            declare(label, lineno)
        elif len(tokens) == 2:
            u = declare(tokens[0], lineno)
            v = declare(tokens[1], lineno)
            if (u, v) in edges:
                raise DuplicateEdgeError(
                    f"line {lineno}: duplicate edge {u} -> {v}"
                )
            edges.add((u, v))
        else:
            raise MalformedLineError(
                lineno, f"expected '<src> <dst>' or 'node <id>', got {line!r}"
            )

    if not nodes:
        raise EmptyGraphError("no nodes declared")
    return DirectedGraph(tuple(nodes), frozenset(edges))


def serialize_edge_list(g: DirectedGraph) -> str:
    """Render *g* so that ``parse_edge_list`` reproduces it exactly,
    node order included.

    Edge lines come out source-major in node order, targets in node order
    within each source.  When first appearance along that edge sequence
    already spells out ``g.nodes`` the output is edge lines only; otherwise
    every node is declared up front with a ``node`` line, which pins the
    order no matter how the edges interleave.
    """
    pos = {label: i for i, label in enumerate(g.nodes)}
    edge_lines: list[Edge] = []
    for u in g.nodes:
        for v in sorted(g.successors(u), key=pos.__getitem__):
            edge_lines.append((u, v))

    first_seen: list[NodeId] = []
    seen: set[NodeId] = set()
    for u, v in edge_lines:
        for label in (u, v):
            if label not in seen:
                seen.add(label)
                first_seen.append(label)

    lines: list[str] = []
    if tuple(first_seen) != g.nodes:
        lines.extend(f"node {label}" for label in g.nodes)
    lines.extend(f"{u} {v}" for u, v in edge_lines)
    return "\n".join(lines) + "\n"


def to_adjacency_matrix(
    g: DirectedGraph, order: Iterable[NodeId] | None = None
) -> AdjacencyMatrix:
    """Build the 0/1 adjacency matrix of *g* over *order* (default: node
    order).  Raises OrderMismatchError unless *order* is a permutation of
    the node set."""
    row_order = g.nodes if order is None else tuple(order)
    if sorted(row_order) != sorted(g.nodes):
        raise OrderMismatchError(
            "order must be a permutation of the graph's nodes"
        )
    cells = tuple(
        tuple(1 if (u, v) in g.edges else 0 for v in row_order)
        for u in row_order
    )
    return AdjacencyMatrix(row_order, cells)


def from_adjacency_matrix(m: AdjacencyMatrix) -> DirectedGraph:
    """Inverse of :func:`to_adjacency_matrix` for the same order."""
    edges = frozenset(
        (m.order[i], m.order[j])
        for i, row in enumerate(m.cells)
        for j, cell in enumerate(row)
        if cell
    )
    return DirectedGraph(m.order, edges)


# ---- query validation ----


class ViolationKind(Enum):
    TOO_SMALL = "too-small"
    NO_EDGES = "no-edges"
    SELF_LOOP = "self-loop"
    DISCONNECTED = "disconnected"


@dataclass(frozen=True)
class Violation:
    """One reason a graph cannot serve as a query pattern."""

    kind: ViolationKind
    node: NodeId | None = None

    def __str__(self) -> str:
        if self.kind is ViolationKind.TOO_SMALL:
            return "fewer than two nodes"
        if self.kind is ViolationKind.NO_EDGES:
            return "no edges"
        if self.kind is ViolationKind.SELF_LOOP:
            return f"self-loop at {self.node!r}"
        return "not weakly connected"


class InvalidQueryError(GraphError):
    """Raised where a valid query graph is a hard precondition."""

    def __init__(self, violations: tuple[Violation, ...]):
        super().__init__(
            "invalid query graph: " + "; ".join(str(v) for v in violations)
        )
        self.violations = violations


def validate_query(g: DirectedGraph) -> tuple[Violation, ...]:
    """Check whether *g* can serve as a query pattern.

    A query needs at least two nodes, at least one edge, no self-loops,
    and a weakly connected shape.  Returns every violation found (empty
    tuple when *g* is acceptable) instead of stopping at the first.
    """
    found: list[Violation] = []
    if g.n < 2:
        found.append(Violation(ViolationKind.TOO_SMALL))
    if not g.edges:
        found.append(Violation(ViolationKind.NO_EDGES))
    for label in g.self_loop_nodes():
        found.append(Violation(ViolationKind.SELF_LOOP, label))
    if not g.is_weakly_connected():
        found.append(Violation(ViolationKind.DISCONNECTED))
    return tuple(found)


def require_valid_query(g: DirectedGraph) -> DirectedGraph:
    violations = validate_query(g)
    if violations:
        raise InvalidQueryError(violations)
    return g
