"""Permutation entropy for time series, graph signals and multichannel signals."""

from ._permgraph import (
    DivergenceError,
    Graph,
    IoError,
    NoValidPatterns,
    ParseError,
    cartesian_product,
    complete_graph,
    directed_path,
    empty_graph,
    henon,
    load_adjacency,
    load_signal,
    lorenz,
    mmspe,
    mpe_graph,
    neighborhood_embedding,
    ordinal_pattern,
    pe_graph,
    permutation_entropy,
)

__all__ = [
    "DivergenceError",
    "Graph",
    "IoError",
    "NoValidPatterns",
    "ParseError",
    "cartesian_product",
    "complete_graph",
    "directed_path",
    "empty_graph",
    "henon",
    "load_adjacency",
    "load_signal",
    "lorenz",
    "mmspe",
    "mpe_graph",
    "neighborhood_embedding",
    "ordinal_pattern",
    "pe_graph",
    "permutation_entropy",
]
