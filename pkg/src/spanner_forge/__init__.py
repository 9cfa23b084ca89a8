"""Generators, checkers and exhaustive certifiers for collective additive tree spanners."""

from .graph import (
    INF,
    DistanceMatrix,
    Graph,
    GraphError,
    SpanningTree,
    TreeSystem,
    all_pairs_distances,
    bfs_distances,
    bfs_tree,
    count_spanning_trees,
    enumerate_spanning_trees,
    is_spanning_subgraph,
    tree_distance,
    treewidth_exact,
)

__version__ = "0.1.0"
