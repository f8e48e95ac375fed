"""Leaf recognition in the search trees of graph searches."""

from leafsearch.errors import (
    CapExceededError,
    DisconnectedGraphError,
    GraphClassError,
    GraphFormatError,
    LeafSearchError,
    OrderingError,
    TrivialGraphError,
    UnknownVertexError,
)
from leafsearch.graph import (
    Graph,
    LayerAssignment,
    VertexOrdering,
    load_graph,
    read_graph,
)
from leafsearch.recognize import LeafKind, LeafQuery, LeafVerdict, query
from leafsearch.search import (
    Arbitrary,
    PlusRho,
    SearchKind,
    enumerate_orderings,
    is_search_ordering,
    run_search,
)
from leafsearch.trees import (
    LeafRole,
    RootedSpanningTree,
    TreeKind,
    build_tree,
    classify_leaf,
)

__version__ = "0.1.0"

__all__ = [
    "Arbitrary",
    "CapExceededError",
    "DisconnectedGraphError",
    "Graph",
    "GraphClassError",
    "GraphFormatError",
    "LayerAssignment",
    "LeafKind",
    "LeafQuery",
    "LeafRole",
    "LeafSearchError",
    "LeafVerdict",
    "OrderingError",
    "PlusRho",
    "RootedSpanningTree",
    "SearchKind",
    "TreeKind",
    "TrivialGraphError",
    "UnknownVertexError",
    "VertexOrdering",
    "build_tree",
    "classify_leaf",
    "enumerate_orderings",
    "is_search_ordering",
    "load_graph",
    "query",
    "read_graph",
    "run_search",
]
