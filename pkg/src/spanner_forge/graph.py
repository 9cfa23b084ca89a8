"""Undirected simple graphs, hop distances, spanning trees and exact treewidth.

Vertices are always the integers ``0..n-1``. Graphs are immutable once built
so they can be shared freely between certifier workers.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

INF = math.inf
"""Distance between vertices in different components."""

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


class DisconnectedGraphError(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"graph is disconnected: no path between {u} and {v}")
        self.pair = (u, v)


class SizeLimitError(GraphError):
    pass


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable undirected simple graph on ``0..n-1`` with optional labels."""

    __slots__ = ("n", "edges", "adj", "labels", "_edge_set")

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Mapping[int, str] | None = None,
    ):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen: set[Edge] = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            key = _norm(u, v)
            if key in seen:
                raise GraphError(f"multi-edge {key}")
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        self._edge_set = frozenset(seen)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.labels: dict[int, str] = dict(labels or {})

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self._edge_set

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def vertex_by_label(self, label: str) -> int:
        for v, lab in self.labels.items():
            if lab == label:
                return v
        raise KeyError(label)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return all(d != INF for d in bfs_distances(self, 0))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, renumbered; returns it with the new->old id map."""
        old = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges if u in new_id and v in new_id]
        labels = {new_id[v]: lab for v, lab in self.labels.items() if v in new_id}
        return Graph(len(old), edges, labels), old

    def without_vertices(self, removed: Iterable[int]) -> "Graph":
        """Same vertex ids, all edges at ``removed`` dropped (they become isolated)."""
        gone = set(removed)
        return Graph(
            self.n,
            [e for e in self.edges if e[0] not in gone and e[1] not in gone],
            self.labels,
        )

    def complement(self) -> "Graph":
        return Graph(
            self.n,
            [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.has_edge(u, v)],
            self.labels,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def bfs_distances(g: Graph, src: int, allowed: set[int] | None = None) -> list[float]:
    """Hop distances from ``src``; vertices outside ``allowed`` are never entered."""
    if not 0 <= src < g.n:
        raise GraphError(f"source {src} not in graph")
    dist: list[float] = [INF] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] == INF and (allowed is None or w in allowed):
                dist[w] = du
                queue.append(w)
    return dist


class DistanceMatrix:
    """Square table of hop distances with ``INF`` for unreachable pairs."""

    __slots__ = ("rows",)

    def __init__(self, rows: list[list[float]]):
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            u, v = idx
            return self.rows[u][v]
        return self.rows[idx]

    def max(self) -> float:
        return max((max(r) for r in self.rows), default=0)


def all_pairs_distances(g: Graph, allow_disconnected: bool = False) -> DistanceMatrix:
    rows = [bfs_distances(g, s) for s in range(g.n)]
    if not allow_disconnected and g.n:
        for v, d in enumerate(rows[0]):
            if d == INF:
                raise DisconnectedGraphError(0, v)
    return DistanceMatrix(rows)


class SpanningTree:
    """A spanning tree of ``host`` given by its ``n - 1`` edges."""

    __slots__ = ("host", "edges", "adj", "_dist")

    def __init__(self, host: Graph, edges: Iterable[Sequence[int]], check: bool = True):
        self.host = host
        self.edges: frozenset[Edge] = frozenset(_norm(int(u), int(v)) for u, v in edges)
        adj: list[list[int]] = [[] for _ in range(host.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = adj
        self._dist: list[list[float]] | None = None
        if check:
            self._validate()

    @classmethod
    def from_parents(cls, host: Graph, parent: Mapping[int, int] | Sequence[int], check: bool = True):
        items = parent.items() if isinstance(parent, Mapping) else enumerate(parent)
        return cls(host, [(v, p) for v, p in items if p is not None and p >= 0], check=check)

    def _validate(self) -> None:
        n = self.host.n
        if len(self.edges) != max(n - 1, 0):
            raise GraphError(f"spanning tree needs {n - 1} edges, got {len(self.edges)}")
        for u, v in self.edges:
            if not self.host.has_edge(u, v):
                raise GraphError(f"tree edge ({u}, {v}) is not a host edge")
        if n and any(d == INF for d in self._bfs(0)):
            raise GraphError("edge set does not span the host (contains a cycle)")

    def _bfs(self, src: int) -> list[float]:
        dist: list[float] = [INF] * self.host.n
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distances(self) -> list[list[float]]:
        if self._dist is None:
            self._dist = [self._bfs(s) for s in range(self.host.n)]
        return self._dist

    def distance(self, u: int, v: int) -> float:
        return self.distances()[u][v]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def as_graph(self) -> Graph:
        return Graph(self.host.n, sorted(self.edges), self.host.labels)

    def parents(self, root: int) -> list[int]:
        """Parent of every vertex when rooted at ``root`` (``-1`` for the root)."""
        parent = [-2] * self.host.n
        parent[root] = -1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if parent[w] == -2:
                    parent[w] = u
                    queue.append(w)
        return parent

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanningTree):
            return NotImplemented
        return self.host is other.host and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"SpanningTree({sorted(self.edges)})"


def tree_distance(t: SpanningTree, u: int, v: int) -> float:
    return t.distance(u, v)


@dataclass
class TreeSystem:
    host: Graph
    trees: list[SpanningTree]

    def __post_init__(self):
        if not self.trees:
            raise GraphError("a tree system needs at least one tree")
        for t in self.trees:
            if t.host is not self.host and t.host != self.host:
                raise GraphError("all trees must span the same host")

    @property
    def mu(self) -> int:
        return len(self.trees)


def bfs_tree(g: Graph, root: int) -> SpanningTree:
    """Shortest-path tree; each vertex hangs off its lowest-id closer neighbour."""
    dist = bfs_distances(g, root)
    edges = []
    for v in range(g.n):
        if v == root:
            continue
        if dist[v] == INF:
            raise DisconnectedGraphError(root, v)
        edges.append((v, min(w for w in g.adj[v] if dist[w] == dist[v] - 1)))
    return SpanningTree(g, edges, check=False)


def _bareiss_det(mat: list[list[int]]) -> int:
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def count_spanning_trees(g: Graph) -> int:
    """Kirchhoff count via an exact integer determinant of the reduced Laplacian."""
    if g.n <= 1:
        return 1
    lap = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return _bareiss_det([row[1:] for row in lap[1:]])


class SpanningTreeStream:
    """Iterates every spanning tree exactly once in a fixed order.

    Include/exclude branching over ``g.edges`` (sorted order). When ``budget``
    trees have been produced the stream stops and ``exceeded`` becomes True if
    at least one further tree exists.
    """

    def __init__(self, g: Graph, budget: int | None = None):
        self.g = g
        self.budget = budget
        self.emitted = 0
        self.exceeded = False

    def __iter__(self) -> Iterator[SpanningTree]:
        g = self.g
        n, edges = g.n, g.edges
        if n <= 1:
            self.emitted = 1
            yield SpanningTree(g, [], check=False)
            return
        if not g.is_connected():
            raise DisconnectedGraphError(*_separated_pair(g))

        def find(comp: list[int], x: int) -> int:
            while comp[x] != x:
                x = comp[x]
            return x

        def connectable(chosen: list[Edge], start: int) -> bool:
            comp = list(range(n))
            parts = n
            for u, v in chosen + list(edges[start:]):
                ru, rv = find(comp, u), find(comp, v)
                if ru != rv:
                    comp[ru] = rv
                    parts -= 1
            return parts == 1

        chosen: list[Edge] = []

        def rec(i: int, comp: list[int]) -> Iterator[list[Edge]]:
            if len(chosen) == n - 1:
                yield chosen
                return
            if i == len(edges):
                return
            u, v = edges[i]
            ru, rv = find(comp, u), find(comp, v)
            if ru != rv:
                nxt = comp[:]
                nxt[ru] = rv
                chosen.append((u, v))
                yield from rec(i + 1, nxt)
                chosen.pop()
            if connectable(chosen, i + 1):
                yield from rec(i + 1, comp)

        for tree_edges in rec(0, list(range(n))):
            if self.budget is not None and self.emitted >= self.budget:
                self.exceeded = True
                return
            self.emitted += 1
            yield SpanningTree(g, tree_edges, check=False)


def enumerate_spanning_trees(g: Graph, budget: int | None = None) -> SpanningTreeStream:
    return SpanningTreeStream(g, budget)


def _separated_pair(g: Graph) -> Edge:
    d = bfs_distances(g, 0)
    return 0, next(v for v in range(g.n) if d[v] == INF)


TREEWIDTH_MAX_VERTICES = 22


def _degeneracy(g: Graph) -> int:
    deg = {v: g.degree(v) for v in range(g.n)}
    alive = set(range(g.n))
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.remove(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return best


def treewidth_exact(g: Graph, cap: int | None = None) -> int | None:
    """Exact treewidth by elimination-set DP, or ``None`` if it exceeds ``cap``.

    Feasibility of width ``w`` is decided over prefixes ``S`` of an elimination
    ordering: ``v`` may follow ``S`` when the vertices reachable from ``v``
    through ``S`` (outside ``S``) number at most ``w``.
    """
    n = g.n
    if n > TREEWIDTH_MAX_VERTICES:
        raise SizeLimitError(f"treewidth DP is limited to {TREEWIDTH_MAX_VERTICES} vertices, got {n}")
    if n == 0:
        return 0
    cap = n - 1 if cap is None else cap
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = (1 << n) - 1

    def q_size(s: int, v: int) -> int:
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            fresh = nbr[u] & ~seen
            seen |= fresh
            out |= fresh & ~s
            inner = fresh & s
            while inner:
                low = inner & -inner
                stack.append(low.bit_length() - 1)
                inner ^= low
        return bin(out).count("1")

    def feasible(w: int) -> bool:
        layer = {0}
        for _ in range(n):
            nxt = set()
            for s in layer:
                rest = full & ~s
                while rest:
                    low = rest & -rest
                    v = low.bit_length() - 1
                    rest ^= low
                    if q_size(s, v) <= w:
                        nxt.add(s | low)
            if not nxt:
                return False
            layer = nxt
        return full in layer

    for w in range(_degeneracy(g), cap + 1):
        if feasible(w):
            return w
    return None


def is_spanning_subgraph(h: Graph, g: Graph) -> bool:
    if h.n != g.n:
        raise GraphError(f"vertex sets differ ({h.n} vs {g.n} vertices)")
    return all(g.has_edge(u, v) for u, v in h.edges) and h.is_connected()
