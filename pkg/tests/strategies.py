"""Hypothesis strategies for small connected graphs, trees and interval models."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from spanner_forge.graph import Graph
from spanner_forge.intervals import IntervalModel


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 8, max_extra: int = 10) -> Graph:
    """A random spanning tree plus a few extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    if n >= 2:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        extra = draw(st.lists(st.sampled_from(pairs), max_size=max_extra))
        edges.update(extra)
    return Graph(n, sorted(edges))


@st.composite
def graphs_with_tree(draw, max_n: int = 8):
    """A connected graph together with the edges of one of its spanning trees."""
    g = draw(connected_graphs(min_n=2, max_n=max_n))
    order = draw(st.permutations(list(g.edges)))
    comp = list(range(g.n))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    tree = []
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            comp[ru] = rv
            tree.append((u, v))
    return g, tree


@st.composite
def k_trees(draw, k: int, max_extra: int = 8) -> Graph:
    """A random k-tree: a (k+1)-clique, then vertices glued onto existing k-cliques."""
    n0 = k + 1
    edges = {(u, v) for u in range(n0) for v in range(u + 1, n0)}
    cliques = [tuple(range(n0))]
    extra = draw(st.integers(0, max_extra))
    n = n0
    for _ in range(extra):
        big = draw(st.sampled_from(cliques))
        drop = draw(st.integers(0, k))
        base = tuple(x for i, x in enumerate(big) if i != drop)
        for u in base:
            edges.add((u, n))
        cliques.append(base + (n,))
        n += 1
    return Graph(n, sorted(edges))


@st.composite
def connected_interval_models(draw, max_n: int = 12) -> IntervalModel:
    """Intervals laid left to right so each one overlaps an earlier one."""
    n = draw(st.integers(1, max_n))
    out = []
    start = Fraction(draw(st.integers(0, 8)), 2)
    reach = start
    for _ in range(n):
        # the union so far is [start, reach]; starting inside it keeps the graph connected
        lo = max(start, reach - Fraction(draw(st.integers(0, 6)), 2))
        hi = lo + Fraction(draw(st.integers(0, 8)), 2)
        out.append((lo, hi))
        reach = max(reach, hi)
    return IntervalModel(tuple(out))
