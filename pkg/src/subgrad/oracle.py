"""Independent cross-checking: brute force, random graphs, comparison.

The enumerator here is the dumbest correct thing: assign query nodes to
source nodes one at a time in sorted order, keep assignments one-to-one,
and reject a partial assignment as soon as it contradicts some query edge.
No model sets, no anchors, no ordering tricks — on purpose.  Its only job
is to disagree with the matcher if the matcher is wrong, so it shares no
traversal machinery with it, and it refuses sources large enough that its
own runtime would become the suspect.
"""

from __future__ import annotations

import math
import random
import string
from dataclasses import dataclass

from .graph import DirectedGraph, GraphError, NodeId, require_valid_query, validate_query
from .matcher import MatchMode, enumerate_matches
from .model_set import QueryShape, build_model_set, classify_shape

#: Sources beyond this many nodes are refused by the brute-force enumerator.
DEFAULT_SOURCE_NODE_LIMIT = 12


class SizeLimitError(GraphError):
    pass


@dataclass(frozen=True, order=True)
class OracleMapping:
    """An injective query-node -> source-node assignment, stored as pairs
    sorted by query node so that equal assignments compare equal."""

    pairs: tuple[tuple[NodeId, NodeId], ...]

    @classmethod
    def from_dict(cls, mapping: dict[NodeId, NodeId]) -> OracleMapping:
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[NodeId, NodeId]:
        return dict(self.pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{q}->{s}" for q, s in self.pairs) + "}"


def enumerate_subgraph_isomorphisms(
    query: DirectedGraph,
    source: DirectedGraph,
    max_source_nodes: int = DEFAULT_SOURCE_NODE_LIMIT,
) -> frozenset[OracleMapping]:
    """Every injective mapping of *query* into *source* that preserves all
    query edges (non-induced: extra source edges are fine).

    Raises SizeLimitError when the source has more than *max_source_nodes*
    nodes; the recursion is factorial and meant for cross-checking only.
    """
    require_valid_query(query)
    if source.n > max_source_nodes:
        raise SizeLimitError(
            f"source has {source.n} nodes; brute force is capped at "
            f"{max_source_nodes}"
        )
    query_nodes = sorted(query.nodes)
    source_nodes = sorted(source.nodes)
    query_edges = sorted(query.edges)
    assignment: dict[NodeId, NodeId] = {}
    found: set[OracleMapping] = set()

    def consistent() -> bool:
        for u, v in query_edges:
            if u in assignment and v in assignment:
                if not source.has_edge(assignment[u], assignment[v]):
                    return False
        return True

    def place(k: int) -> None:
        if k == len(query_nodes):
            found.add(OracleMapping.from_dict(assignment))
            return
        q = query_nodes[k]
        for s in source_nodes:
            if s in assignment.values():
                continue
            assignment[q] = s
            if consistent():
                place(k + 1)
            del assignment[q]

    place(0)
    return frozenset(found)


# ---- random graphs ----


@dataclass(frozen=True)
class RandomGraphSpec:
    """Parameters for a reproducible random digraph: every ordered pair of
    distinct nodes gets an edge independently with ``edge_probability``."""

    node_count: int
    edge_probability: float
    seed: int

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise GraphError("node_count must be at least 1")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise GraphError("edge_probability must be in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise GraphError("seed must be an unsigned 64-bit integer")


def random_digraph(spec: RandomGraphSpec) -> DirectedGraph:
    """Generate the digraph described by *spec*.

    Nodes are labelled "1" through str(node_count); the same spec always
    yields the same graph, and no self-loops are generated.  Instead of one
    coin flip per ordered pair, the sampler jumps between selected pairs
    with geometric gaps, which draws from the same distribution in time
    proportional to the edge count and keeps million-pair graphs cheap.
    """
    rng = random.Random(spec.seed)
    n, p = spec.node_count, spec.edge_probability
    labels = [str(i) for i in range(1, n + 1)]
    pair_count = n * (n - 1)
    edges: set[tuple[NodeId, NodeId]] = set()
    if p >= 1.0:
        edges = {(u, v) for u in labels for v in labels if u != v}
    elif p > 0.0:
        log_skip = math.log(1.0 - p)
        # Flat index over all ordered pairs, row-major with the diagonal
        # removed; strictly increasing, so no pair repeats.
        i = -1
        while True:
            i += 1 + int(math.log(1.0 - rng.random()) / log_skip)
            if i >= pair_count:
                break
            u, j = divmod(i, n - 1)
            v = j + 1 if j >= u else j
            edges.add((labels[u], labels[v]))
    return DirectedGraph(tuple(labels), frozenset(edges))


# ---- matcher vs. oracle ----


@dataclass(frozen=True)
class ComparisonReport:
    """Mapping sets from both routes plus their symmetric difference."""

    matcher_mappings: frozenset[OracleMapping]
    oracle_mappings: frozenset[OracleMapping]

    @property
    def missing(self) -> frozenset[OracleMapping]:
        """Found by brute force, missed by the matcher."""
        return self.oracle_mappings - self.matcher_mappings

    @property
    def extra(self) -> frozenset[OracleMapping]:
        """Reported by the matcher, rejected by brute force."""
        return self.matcher_mappings - self.oracle_mappings

    @property
    def passed(self) -> bool:
        return not self.missing and not self.extra


def compare_matcher_oracle(
    query: DirectedGraph,
    source: DirectedGraph,
    max_source_nodes: int = DEFAULT_SOURCE_NODE_LIMIT,
) -> ComparisonReport:
    """Run both routes in injective mode and report the difference.

    The matcher goes through its normal pipeline (default starter, model
    set, per-anchor enumeration); each match contributes its node mapping.
    An empty symmetric difference is a pass.
    """
    require_valid_query(query)
    table = enumerate_matches(source, build_model_set(query), MatchMode.INJECTIVE)
    matcher_side = frozenset(
        OracleMapping.from_dict(match.mapping) for match in table.all_matches()
    )
    oracle_side = enumerate_subgraph_isomorphisms(
        query, source, max_source_nodes=max_source_nodes
    )
    return ComparisonReport(matcher_side, oracle_side)


# ---- randomized self-test ----


@dataclass(frozen=True)
class SelfTestResult:
    instances: int
    failures: tuple[tuple[int, ComparisonReport], ...]

    @property
    def passed(self) -> bool:
        return not self.failures


_QUERY_LABELS = string.ascii_lowercase


def _random_query(rng: random.Random) -> DirectedGraph:
    """A small valid query: a path, a cycle, or a general connected shape,
    picked uniformly."""
    kind = rng.choice(("path", "cycle", "general"))
    if kind == "path":
        nodes = _QUERY_LABELS[: rng.randint(2, 4)]
        edges = {(a, b) for a, b in zip(nodes, nodes[1:])}
    elif kind == "cycle":
        nodes = _QUERY_LABELS[: rng.randint(3, 4)]
        edges = {(a, b) for a, b in zip(nodes, nodes[1:] + nodes[0])}
    else:
        while True:
            nodes = _QUERY_LABELS[: rng.randint(3, 4)]
            p = rng.choice((0.4, 0.5, 0.6))
            edges = {
                (a, b)
                for a in nodes
                for b in nodes
                if a != b and rng.random() < p
            }
            g = DirectedGraph(tuple(nodes), frozenset(edges))
            if not validate_query(g) and classify_shape(g) is QueryShape.GENERAL:
                return g
    return DirectedGraph(tuple(nodes), frozenset(edges))


def random_instance(rng: random.Random) -> tuple[DirectedGraph, DirectedGraph]:
    """One (query, source) pair for self-testing: query of 2-4 nodes,
    source of 4-8 nodes with mixed densities."""
    query = _random_query(rng)
    source = random_digraph(
        RandomGraphSpec(
            node_count=rng.randint(4, 8),
            edge_probability=rng.choice((0.1, 0.2, 0.3, 0.5)),
            seed=rng.getrandbits(32),
        )
    )
    return query, source


def run_self_test(seed: int, instances: int = 100) -> SelfTestResult:
    """Compare matcher and brute force on *instances* random pairs."""
    rng = random.Random(seed)
    failures: list[tuple[int, ComparisonReport]] = []
    for i in range(instances):
        query, source = random_instance(rng)
        report = compare_matcher_oracle(query, source)
        if not report.passed:
            failures.append((i, report))
    return SelfTestResult(instances, tuple(failures))
