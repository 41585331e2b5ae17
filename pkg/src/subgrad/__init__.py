"""subgrad: model-set based detection of a query graph inside a source graph.

The pipeline is: validate the query, pick a starter node, linearize the
query's edges into a chained model set, then try to rebuild that edge list
inside the source graph anchored at every source node in turn.  Any anchor
that admits a full rebuild is a detection; the per-anchor listing is the
reference table.  A deliberately naive brute-force enumerator ships along
for cross-checking.
"""

from .graph import (
    AdjacencyMatrix,
    DirectedGraph,
    DuplicateEdgeError,
    DuplicateNodeError,
    Edge,
    EmptyGraphError,
    GraphError,
    InvalidQueryError,
    MalformedLineError,
    NodeId,
    NonBinaryCellError,
    NonSquareMatrixError,
    OrderMismatchError,
    Violation,
    ViolationKind,
    from_adjacency_matrix,
    parse_edge_list,
    serialize_edge_list,
    to_adjacency_matrix,
    validate_query,
)
from .matcher import (
    CanonicalKey,
    Match,
    MatchMode,
    ReferenceTable,
    UnknownAnchorError,
    canonicalize_match,
    count_matches,
    count_walks,
    detected,
    enumerate_matches,
    match_at_anchor,
)
from .model_set import (
    InvalidStarterError,
    ModelSet,
    QueryShape,
    UnknownStarterError,
    build_model_set,
    classify_shape,
    select_starter,
)
from .oracle import (
    ComparisonReport,
    OracleMapping,
    RandomGraphSpec,
    SizeLimitError,
    compare_matcher_oracle,
    enumerate_subgraph_isomorphisms,
    random_digraph,
    random_instance,
    run_self_test,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix",
    "CanonicalKey",
    "ComparisonReport",
    "DirectedGraph",
    "DuplicateEdgeError",
    "DuplicateNodeError",
    "Edge",
    "EmptyGraphError",
    "GraphError",
    "InvalidQueryError",
    "InvalidStarterError",
    "MalformedLineError",
    "Match",
    "MatchMode",
    "ModelSet",
    "NodeId",
    "NonBinaryCellError",
    "NonSquareMatrixError",
    "OracleMapping",
    "OrderMismatchError",
    "QueryShape",
    "RandomGraphSpec",
    "ReferenceTable",
    "SizeLimitError",
    "UnknownAnchorError",
    "UnknownStarterError",
    "Violation",
    "ViolationKind",
    "build_model_set",
    "canonicalize_match",
    "classify_shape",
    "compare_matcher_oracle",
    "count_matches",
    "count_walks",
    "detected",
    "enumerate_matches",
    "enumerate_subgraph_isomorphisms",
    "from_adjacency_matrix",
    "match_at_anchor",
    "parse_edge_list",
    "random_digraph",
    "random_instance",
    "run_self_test",
    "select_starter",
    "serialize_edge_list",
    "to_adjacency_matrix",
    "validate_query",
]
