"""Interval models, their intersection graphs, and a sparse additive 1-spanner."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import INF, Graph, GraphError, bfs_distances


@dataclass(frozen=True)
class IntervalModel:
    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for i, (lo, hi) in enumerate(self.intervals):
            if lo > hi:
                raise GraphError(f"interval {i} has left {lo} > right {hi}")

    @classmethod
    def of(cls, pairs: Sequence[Sequence]) -> "IntervalModel":
        return cls(tuple((Fraction(lo), Fraction(hi)) for lo, hi in pairs))

    def __len__(self) -> int:
        return len(self.intervals)


def graph_from_interval_model(m: IntervalModel) -> Graph:
    """Intersection graph of closed intervals; labels give the rank by left endpoint."""
    iv = m.intervals
    n = len(iv)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if iv[i][0] <= iv[j][1] and iv[j][0] <= iv[i][1]
    ]
    order = sorted(range(n), key=lambda v: (iv[v][0], iv[v][1], v))
    labels = {v: f"I{rank}" for rank, v in enumerate(order)}
    return Graph(n, edges, labels)


def is_unit_model(m: IntervalModel) -> bool:
    return len({hi - lo for lo, hi in m.intervals}) <= 1


def unit_chain_model(k: int, m: int) -> IntervalModel:
    """Unit (length 2) model of the x-K_k-y gadget chain, in the chain's vertex order."""
    out: list[tuple[int, int]] = [(0, 2)]
    for j in range(m):
        base = 4 * j
        out.extend([(base + 2, base + 4)] * k)
        out.append((base + 4, base + 6))
    return IntervalModel.of(out)


def interval_one_spanner(m: IntervalModel) -> Graph:
    """Additive 1-spanner of an interval graph with at most ``2n - D - 2`` edges.

    BFS layers are taken from the interval with the leftmost right endpoint,
    whose eccentricity equals the diameter ``D``. The interval of each layer
    reaching furthest right (its *spine* vertex) is adjacent to the whole next
    layer, so hanging every vertex off the previous spine vertex gives a BFS
    tree. Each non-spine vertex that meets its own layer's spine vertex gets
    that one extra edge; this shortcut is what a shortest path climbing
    straight through the layers needs.
    """
    g = graph_from_interval_model(m)
    n = g.n
    if n == 0:
        return g
    iv = m.intervals
    src = min(range(n), key=lambda v: (iv[v][1], v))
    dist = bfs_distances(g, src)
    if any(d == INF for d in dist):
        raise GraphError("interval graph is disconnected")
    depth = int(max(dist))
    layers: list[list[int]] = [[] for _ in range(depth + 1)]
    for v in range(n):
        layers[int(dist[v])].append(v)
    spine = [max(layer, key=lambda v: (iv[v][1], -v)) for layer in layers]
    edges = set()
    for i in range(1, depth + 1):
        for v in layers[i]:
            edges.add((min(v, spine[i - 1]), max(v, spine[i - 1])))
    for i, layer in enumerate(layers):
        for v in layer:
            if v != spine[i] and g.has_edge(v, spine[i]):
                edges.add((min(v, spine[i]), max(v, spine[i])))
    return Graph(n, sorted(edges), g.labels)
