"""Snowflake k-trees, chains of cliques, and the deficient-edge hunter.

A snowflake is stored arithmetically. Construction-tree nodes are numbered
breadth first: node 0 is the base clique on vertices ``0..k`` and node
``i >= 1`` introduces vertex ``k + i``, so vertex ids grow with introduction
order. Height-1 node ``1 + j`` removes base vertex ``j // ceil(k/2)`` (copy
``j % ceil(k/2)``); every deeper node has one child per non-creator vertex of
its clique, in increasing vertex order. Nothing is materialized unless asked
for, so snowflakes with millions of vertices can be walked branch by branch.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator, Protocol, Sequence

from .graph import INF, Graph, GraphError, SizeLimitError, bfs_distances

DEFAULT_MAX_VERTICES = 200_000


class InsufficientHeight(GraphError):
    """The requested walk leaves the snowflake."""


class Snowflake:
    """The ``(k, h)``-snowflake with its construction tree."""

    def __init__(self, k: int, h: int, max_vertices: int = DEFAULT_MAX_VERTICES):
        if k < 2 or h < 0:
            raise GraphError("need k >= 2 and h >= 0")
        self.k = k
        self.h = h
        self.max_vertices = max_vertices
        self.copies = -(-k // 2)
        self.m1 = (k + 1) * self.copies
        self._starts = [0, 1]
        for t in range(1, h + 1):
            self._starts.append(self._starts[-1] + self.level_size(t))
        self.node_count = self._starts[h + 1]
        self.n = k + self.node_count
        self._clique = lru_cache(maxsize=1 << 16)(self._clique_uncached)
        self._graph: Graph | None = None

    # construction tree

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(range(self.k + 1))

    def level_size(self, t: int) -> int:
        if t == 0:
            return 1
        return self.m1 * self.k ** (t - 1)

    def height(self, node: int) -> int:
        if not 0 <= node < self.node_count:
            raise GraphError(f"node {node} is not in the construction tree")
        t = 0
        while self._starts[t + 1] <= node:
            t += 1
        return t

    def parent(self, node: int) -> int | None:
        t = self.height(node)
        if t == 0:
            return None
        if t == 1:
            return 0
        return self._starts[t - 1] + (node - self._starts[t]) // self.k

    def creator(self, node: int) -> int | None:
        """Vertex whose introduction created the clique (``v_K``); None for the base."""
        return None if node == 0 else self.k + node

    def removed(self, node: int) -> int | None:
        """The ``x`` for which ``node`` is a ``-x`` child of its parent."""
        t = self.height(node)
        if t == 0:
            return None
        o = node - self._starts[t]
        if t == 1:
            return o // self.copies
        return self.clique(self.parent(node))[o % self.k]

    def _clique_uncached(self, node: int) -> tuple[int, ...]:
        if node == 0:
            return self.base
        gone = self.removed(node)
        return tuple(v for v in self.clique(self.parent(node)) if v != gone) + (self.k + node,)

    def clique(self, node: int) -> tuple[int, ...]:
        """Sorted vertex set of the clique; the creator, if any, is last."""
        return self._clique(node)

    def children(self, node: int) -> range:
        t = self.height(node)
        if t >= self.h:
            return range(0)
        if t == 0:
            return range(1, 1 + self.m1)
        first = self._starts[t + 1] + (node - self._starts[t]) * self.k
        return range(first, first + self.k)

    def child_removing(self, node: int, v: int, copy: int = 0) -> int:
        """The ``-v`` child of ``node`` (``copy`` picks among the base's copies)."""
        t = self.height(node)
        if t >= self.h:
            raise InsufficientHeight(f"node {node} at height {t} has no children (h={self.h})")
        if t == 0:
            if not 0 <= v <= self.k or not 0 <= copy < self.copies:
                raise GraphError(f"no -{v} child copy {copy} of the base clique")
            return 1 + v * self.copies + copy
        cl = self.clique(node)
        if v not in cl[:-1]:
            raise GraphError(f"vertex {v} is not a non-creator vertex of node {node}")
        return self.children(node)[cl.index(v)]

    def node_of(self, v: int) -> int:
        """Node that introduced ``v`` (0 for base vertices)."""
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} is not in the snowflake")
        return 0 if v <= self.k else v - self.k

    def earliest(self, node: int) -> int | None:
        """Earliest introduced non-base vertex of the clique."""
        rest = [v for v in self.clique(node) if v > self.k]
        return min(rest) if rest else None

    def is_descendant(self, node: int, ancestor: int) -> bool:
        ta = self.height(ancestor)
        while node is not None and self.height(node) > ta:
            node = self.parent(node)
        return node == ancestor

    def subtree(self, node: int) -> Iterator[tuple[int, tuple[int, ...]]]:
        """Nodes of ``D(node)`` with their cliques, depth first."""
        stack = [(node, self.clique(node))]
        while stack:
            nd, cl = stack.pop()
            yield nd, cl
            kids = self.children(nd)
            if not kids:
                continue
            for i, child in enumerate(kids):
                if nd == 0:
                    gone = i // self.copies
                else:
                    gone = cl[i]
                stack.append((child, tuple(v for v in cl if v != gone) + (self.k + child,)))

    def branch_vertices(self, node: int) -> set[int]:
        """Vertices of ``G[D(K)]`` together with ``K`` itself."""
        out = set(self.clique(node))
        for nd, _ in self.subtree(node):
            if nd:
                out.add(self.k + nd)
        return out

    # graph view

    def attachment(self, v: int) -> tuple[int, ...]:
        """The k-clique ``v`` was joined to (the other base vertices for a base vertex)."""
        if v <= self.k:
            return tuple(u for u in self.base if u != v)
        return self.clique(self.node_of(v))[:-1]

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        u, v = min(u, v), max(u, v)
        if v >= self.n or u < 0:
            return False
        return v <= self.k or u in self.clique(v - self.k)

    def neighbors(self, v: int) -> set[int]:
        out = set(self.attachment(v))
        if v <= self.k:
            stack = [c for c in self.children(0) if self.removed(c) != v]
        else:
            stack = list(self.children(self.node_of(v)))
        while stack:
            nd = stack.pop()
            out.add(self.k + nd)
            kids = self.children(nd)
            if kids:
                cl = self.clique(nd)
                stack.extend(c for i, c in enumerate(kids) if cl[i] != v)
        return out

    @property
    def graph(self) -> Graph:
        if self._graph is None:
            if self.n > self.max_vertices:
                raise SizeLimitError(
                    f"S({self.k},{self.h}) has {self.n} vertices, above the cap {self.max_vertices}"
                )
            edges = list(itertools.combinations(self.base, 2))
            for node, cl in self.subtree(0):
                if node:
                    edges += [(u, cl[-1]) for u in cl[:-1]]
            labels = {v: f"v{v + 1}" for v in range(self.n)}
            self._graph = Graph(self.n, edges, labels)
        return self._graph

    def node_info(self, node: int) -> dict[str, Any]:
        return {
            "node": node,
            "height": self.height(node),
            "parent": self.parent(node),
            "removed": self.removed(node),
            "creator": self.creator(node),
            "vertices": list(self.clique(node)),
            "earliest": self.earliest(node),
        }


def build_snowflake(k: int, h: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> Snowflake:
    if k < 3:
        raise GraphError("snowflakes need k >= 3 (use triangle_recursion for k = 2)")
    return Snowflake(k, h, max_vertices)


def snowflake_vertex_count(k: int, h: int) -> int:
    """Vertex count from the recurrence on construction-tree levels."""
    n = k + 1
    per_node_children = [(k + 1) * -(-k // 2)] + [k] * max(h - 1, 0)
    level = 1
    for t in range(h):
        level *= per_node_children[t]
        n += level
    return n


def triangle_recursion(c: int) -> Snowflake:
    """The 2-tree on ``3 * 2^(c-1)`` vertices built by repeatedly adding ear triangles."""
    if not 1 <= c <= 12:
        raise GraphError("c must be in 1..12")
    return Snowflake(2, c - 1)


def triangle_recursion_graph(c: int) -> Graph:
    return triangle_recursion(c).graph


def required_height(k: int, c: int) -> int:
    return k * c * c


# successors and branches


@dataclass(frozen=True)
class Successor:
    pair: tuple[int, int]
    perm: tuple[int, ...]
    child_choice: int
    node: int
    path: tuple[int, ...]


def xy_successor(s: Snowflake, x: int, y: int, perm: Sequence[int], child_choice: int = 0) -> Successor:
    """Clique reached from the base by replacing ``perm[0], perm[1], ...`` in turn."""
    base = set(s.base)
    if x not in base or y not in base or x == y:
        raise GraphError("x and y must be distinct base vertices")
    if sorted(perm) != sorted(base - {x, y}):
        raise GraphError("perm must order the base vertices other than x and y")
    if s.h < s.k - 1:
        raise InsufficientHeight(f"x,y-successors need height {s.k - 1}, snowflake has {s.h}")
    node = s.child_removing(0, perm[0], child_choice)
    path = [node]
    for v in perm[1:]:
        node = s.child_removing(node, v)
        path.append(node)
    return Successor((min(x, y), max(x, y)), tuple(perm), child_choice, node, tuple(path))


def fact1_assignment(k: int) -> dict[tuple[int, int], tuple[tuple[int, ...], int]]:
    """First replacement and child copy for every base pair.

    Pairs are taken in lexicographic order; each picks the smallest allowed
    first vertex with spare capacity (at most ``ceil(k/2)`` pairs per vertex),
    backtracking when stuck. The copy index is the vertex's use count.
    """
    cap = -(-k // 2)
    pairs = list(itertools.combinations(range(k + 1), 2))
    used = [0] * (k + 1)
    firsts: list[int] = []

    def rec(i: int) -> bool:
        if i == len(pairs):
            return True
        a, b = pairs[i]
        for v in range(k + 1):
            if v in (a, b) or used[v] >= cap:
                continue
            used[v] += 1
            firsts.append(v)
            if rec(i + 1):
                return True
            firsts.pop()
            used[v] -= 1
        return False

    if not rec(0):
        raise GraphError(f"no first-replacement assignment for k={k}")
    out = {}
    seen = [0] * (k + 1)
    for (a, b), v in zip(pairs, firsts):
        rest = tuple(u for u in range(k + 1) if u not in (a, b, v))
        out[(a, b)] = ((v,) + rest, seen[v])
        seen[v] += 1
    return out


def fact1_successors(s: Snowflake) -> list[Successor]:
    return [xy_successor(s, a, b, perm, ch) for (a, b), (perm, ch) in fact1_assignment(s.k).items()]


def branch_disjointness_check(s: Snowflake, successors: Sequence[Successor]) -> bool:
    """Branches may share only the base vertices their pairs have in common."""
    cap = s.copies
    starts: dict[int, int] = {}
    for succ in successors:
        starts[succ.perm[0]] = starts.get(succ.perm[0], 0) + 1
        if starts[succ.perm[0]] > cap:
            raise GraphError(f"more than {cap} permutations start with vertex {succ.perm[0]}")
    verts = [s.branch_vertices(succ.node) for succ in successors]
    for i, j in itertools.combinations(range(len(successors)), 2):
        allowed = set(successors[i].pair) & set(successors[j].pair)
        if verts[i] & verts[j] != allowed:
            return False
    return True


# chains of cliques and distances along them


@dataclass(frozen=True)
class CliqueChain:
    origin: int
    pair: tuple[int, int]
    nodes: tuple[int, ...]
    z: tuple[int, ...]

    @property
    def alpha(self) -> int:
        return len(self.z)


def chain_of_cliques(s: Snowflake, K: int, x: int, y: int, alpha: int) -> CliqueChain:
    """``K^0 = K``; ``K^i`` is the ``-u`` child of ``K^{i-1}`` with ``u`` its earliest vertex outside ``{x, y}``.

    Any clique containing ``x`` and ``y`` is accepted; on the base clique
    "earliest" is the smallest id and the first copy of the child is used.
    """
    if alpha < 0:
        raise GraphError("alpha must be nonnegative")
    cl = s.clique(K)
    if x not in cl or y not in cl or x == y:
        raise GraphError(f"node {K} does not contain both {x} and {y}")
    if s.height(K) + alpha > s.h:
        raise InsufficientHeight(f"chain of length {alpha} from height {s.height(K)} exceeds h={s.h}")
    nodes = [K]
    z = []
    node = K
    for _ in range(alpha):
        u = min(v for v in s.clique(node) if v not in (x, y))
        node = s.child_removing(node, u)
        nodes.append(node)
        z.append(s.creator(node))
    return CliqueChain(K, (x, y), tuple(nodes), tuple(z))


def fact2_formula(i: int, k: int) -> int:
    return 1 + (i - 1) // (k - 2)


def distance_avoiding(s: Snowflake, src: int, K: int, avoid: set[int], limit: int | None = None) -> float:
    """BFS distance in ``G - avoid`` from ``src`` to ``clique(K) - avoid``.

    The search stays inside ``D(K)`` plus ``K``; this is exact because ``K``
    separates ``D(K)`` from the rest of the graph.
    """
    targets = set(s.clique(K)) - avoid
    if src in targets:
        return 0
    seen = {src}
    frontier = [src]
    d = 0
    while frontier and (limit is None or d < limit):
        d += 1
        nxt = []
        for v in frontier:
            for w in s.neighbors(v):
                if w in seen or w in avoid:
                    continue
                if w in targets:
                    return d
                if w <= s.k or not s.is_descendant(s.node_of(w), K):
                    continue
                seen.add(w)
                nxt.append(w)
        frontier = nxt
    return INF


@dataclass(frozen=True)
class Fact2Row:
    i: int
    z: int
    expected: int
    measured: float

    @property
    def ok(self) -> bool:
        return self.expected == self.measured


@dataclass(frozen=True)
class Fact2Report:
    chain: CliqueChain
    rows: tuple[Fact2Row, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def mismatches(self) -> list[int]:
        return [r.i for r in self.rows if not r.ok]


def fact2_check(s: Snowflake, chain: CliqueChain) -> Fact2Report:
    """Measured ``dist_{G-{x,y}}(z_i, K-{x,y})`` against ``1 + floor((i-1)/(k-2))``."""
    if s.k < 3:
        raise GraphError("the distance formula needs k >= 3")
    avoid = set(chain.pair)
    rows = []
    for i, z in enumerate(chain.z, start=1):
        exp = fact2_formula(i, s.k)
        rows.append(Fact2Row(i, z, exp, distance_avoiding(s, z, chain.origin, avoid, limit=exp + 1)))
    return Fact2Report(chain, tuple(rows))


# spanners


class SnowflakeSpanner(Protocol):
    def has_edge(self, u: int, v: int) -> bool: ...

    def distance(self, u: int, v: int) -> float: ...


_MASK = (1 << 64) - 1


def _mix(seed: int, v: int) -> int:
    """splitmix64 of ``(seed, v)``: a cheap per-vertex random stream."""
    x = (seed * 0x9E3779B97F4A7C15 + v + 1) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class LazyTreeSpanner:
    """Spanning tree of a snowflake with each vertex hung off its attachment clique.

    ``random``: a seeded choice per vertex (base vertices form a random
    recursive tree). ``bfs``: the attachment vertex closest to vertex 0,
    lowest id on ties, which gives a BFS tree since each attachment clique
    separates its vertex from vertex 0. Parents are computed on demand.
    """

    def __init__(self, s: Snowflake, strategy: str = "random", seed: int = 0):
        if strategy not in ("random", "bfs"):
            raise ValueError("strategy must be 'random' or 'bfs'")
        self.s = s
        self.strategy = strategy
        self.seed = seed
        self._parent: dict[int, int] = {}
        self._depth: dict[int, int] = {0: 0}
        self._dist0: dict[int, int] = {0: 0}

    def _d0(self, v: int) -> int:
        if v not in self._dist0:
            if v <= self.s.k:
                self._dist0[v] = 1
            else:
                self._dist0[v] = 1 + min(self._d0(u) for u in self.s.attachment(v))
        return self._dist0[v]

    def parent(self, v: int) -> int:
        if v == 0:
            return -1
        p = self._parent.get(v)
        if p is None:
            s = self.s
            if v <= s.k:
                p = _mix(self.seed, v) % v if self.strategy == "random" else 0
            else:
                att = s.attachment(v)
                if self.strategy == "random":
                    p = att[_mix(self.seed, v) % len(att)]
                else:
                    p = min(att, key=lambda u: (self._d0(u), u))
            self._parent[v] = p
        return p

    def depth(self, v: int) -> int:
        chain = []
        while v not in self._depth:
            chain.append(v)
            v = self.parent(v)
        d = self._depth[v]
        for u in reversed(chain):
            d += 1
            self._depth[u] = d
        return d

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and (self.parent(u) == v or self.parent(v) == u)

    def distance(self, u: int, v: int) -> int:
        du, dv = self.depth(u), self.depth(v)
        d = 0
        while u != v:
            if du >= dv:
                u, du = self.parent(u), du - 1
            else:
                v, dv = self.parent(v), dv - 1
            d += 1
        return d


class GraphSpanner:
    """Adapter for a materialized spanning subgraph."""

    def __init__(self, h: Graph):
        self.h = h
        self._rows: dict[int, list[float]] = {}

    def has_edge(self, u: int, v: int) -> bool:
        return self.h.has_edge(u, v)

    def distance(self, u: int, v: int) -> float:
        if u not in self._rows:
            self._rows[u] = bfs_distances(self.h, u)
        return self._rows[u][v]


def _as_spanner(spanner) -> SnowflakeSpanner:
    if isinstance(spanner, Graph):
        return GraphSpanner(spanner)
    return spanner


class _Components:
    def __init__(self):
        self.up: dict[int, int] = {}

    def find(self, v: int) -> int:
        root = v
        while self.up.get(root, root) != root:
            root = self.up[root]
        while v != root:
            nxt = self.up.get(v, v)
            self.up[v] = root
            v = nxt
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.up[ra] = rb


def branch_components(s: Snowflake, spanner: SnowflakeSpanner, node: int) -> _Components:
    """Connected components of the spanner restricted to ``D(node)`` plus its clique."""
    comp = _Components()
    cl = s.clique(node)
    for u, v in itertools.combinations(cl, 2):
        if spanner.has_edge(u, v):
            comp.union(u, v)
    tree_parent = getattr(spanner, "parent", None) if isinstance(spanner, LazyTreeSpanner) else None
    for nd, ncl in s.subtree(node):
        if nd == node:
            continue
        z = ncl[-1]
        if tree_parent is not None:
            comp.union(z, tree_parent(z))
            continue
        for u in ncl[:-1]:
            if spanner.has_edge(u, z):
                comp.union(u, z)
    return comp


def has_branch_path(s: Snowflake, spanner, node: int, a: int, b: int) -> bool:
    comp = branch_components(s, _as_spanner(spanner), node)
    return comp.find(a) == comp.find(b)


# the hunter


FOUND = "found"
NO_BRANCH_FAILED = "no-branch-failed"
INSUFFICIENT_HEIGHT = "insufficient-height"


@dataclass
class HuntResult:
    status: str
    c: int
    edge: tuple[int, int] | None = None
    deficiency: float | None = None
    lower_bound: int = 0
    trace: list[dict[str, Any]] = field(default_factory=list)
    anomalies: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        def num(x):
            return "inf" if x == INF else x

        return {
            "status": self.status,
            "c": self.c,
            "edge": list(self.edge) if self.edge else None,
            "deficiency": num(self.deficiency),
            "lower_bound": self.lower_bound,
            "trace": [{k: num(v) for k, v in e.items()} for e in self.trace],
            "anomalies": self.anomalies,
        }


def find_deficient_edge(s: Snowflake, spanner, c: int) -> HuntResult:
    """Walk the lower-bound argument against a concrete spanner.

    Stage 1 tests one branch per base pair for a path between the pair inside
    the branch; a pair without one has deficiency at least 1. Each later
    stage moves to a deeper clique and a new pair whose deficiency bound is
    one higher: along a chain of cliques of length ``1 + (C-1)(k-2)`` for
    ``k >= 3``, or to the child on the edge to the clique's creator for
    ``k = 2``. The walk stops once the bound exceeds ``c``. Every bound is
    compared with the measured deficiency and every path property is
    re-checked; disagreements are listed as anomalies.
    """
    if c < 0:
        raise GraphError("c must be nonnegative")
    sp = _as_spanner(spanner)
    k = s.k
    res = HuntResult(NO_BRANCH_FAILED, c)
    try:
        successors = fact1_successors(s)
    except InsufficientHeight:
        res.status = INSUFFICIENT_HEIGHT
        return res
    chosen = None
    for succ in successors:
        x, y = succ.pair
        connected = has_branch_path(s, sp, succ.node, x, y)
        res.trace.append(
            {
                "stage": "branch",
                "clique": list(s.clique(succ.node)),
                "pair": [x, y],
                "path_in_branch": connected,
            }
        )
        if not connected and chosen is None:
            chosen = succ
    if chosen is None:
        return res
    node, (x, y) = chosen.node, chosen.pair
    bound = 1
    measured = sp.distance(x, y) - 1
    res.trace.append(_step("deficient", s, node, (x, y), bound, measured))
    _check(res, measured, bound, (x, y))
    while bound <= c:
        try:
            if k == 2:
                node, (x, y) = _creator_step(s, sp, node, x, y, res)
            else:
                node, (x, y) = _chain_step(s, sp, node, x, y, bound, res)
        except InsufficientHeight:
            res.status = INSUFFICIENT_HEIGHT
            res.edge = (min(x, y), max(x, y))
            res.deficiency = measured
            res.lower_bound = bound
            return res
        bound += 1
        measured = sp.distance(x, y) - 1
        res.trace[-1].update(deficiency_lower_bound=bound, deficiency_measured=measured)
        _check(res, measured, bound, (x, y))
    res.status = FOUND
    res.edge = (min(x, y), max(x, y))
    res.deficiency = measured
    res.lower_bound = bound
    return res


def _step(stage, s, node, pair, bound, measured, **extra) -> dict[str, Any]:
    return {
        "stage": stage,
        "clique": list(s.clique(node)) if node is not None else None,
        "pair": list(pair),
        "deficiency_lower_bound": bound,
        "deficiency_measured": measured,
        **extra,
    }


def _check(res: HuntResult, measured: float, bound: int, pair) -> None:
    if measured < bound:
        res.anomalies.append(f"deficiency of {list(pair)} is {measured}, below the bound {bound}")


def _chain_step(s, sp, node, x, y, bound, res):
    alpha = 1 + (bound - 1) * (s.k - 2)
    chain = chain_of_cliques(s, node, x, y, alpha)
    za = chain.z[-1]
    comp = branch_components(s, sp, node)
    if comp.find(x) == comp.find(y):
        res.anomalies.append(f"pair {[x, y]} is connected inside its branch")
    w = x if comp.find(za) != comp.find(x) else y
    if comp.find(za) == comp.find(w):
        res.anomalies.append(f"z={za} is connected to both {x} and {y}")
    f2 = distance_avoiding(s, za, node, {x, y}, limit=bound + 1)
    if f2 < bound:
        res.anomalies.append(f"distance from z={za} to the clique avoiding {[x, y]} is {f2} < {bound}")
    new = chain.nodes[-1]
    holds = not has_branch_path(s, sp, new, w, za)
    if not holds:
        res.anomalies.append(f"pair {[w, za]} is connected inside its branch")
    res.trace.append(
        _step("chain", s, new, (w, za), bound, None, alpha=alpha, fact2_distance=f2, path_property=holds)
    )
    return new, (w, za)


def _creator_step(s, sp, node, x, y, res):
    """Ear step: the clique's creator ``z`` and ``w in {x, y}`` with no ``w, z`` path.

    The branch of the pair ``{w, z}`` is the child on that edge; at the last
    level it is the edge itself, after which the walk cannot continue.
    """
    if node is None:
        raise InsufficientHeight("no clique left below the last ear")
    z = s.creator(node)
    leaf = s.height(node) >= s.h
    picked = None
    for w in (x, y):
        other = y if w == x else x
        if leaf:
            if not sp.has_edge(w, z):
                picked = (w, None)
                break
            continue
        child = s.child_removing(node, other)
        if not has_branch_path(s, sp, child, w, z):
            picked = (w, child)
            break
    if picked is None:
        res.anomalies.append(f"both pairs {[x, z]} and {[y, z]} are connected inside their branches")
        picked = (x, None if leaf else s.child_removing(node, y))
    w, child = picked
    res.trace.append(_step("ear", s, child, (w, z), None, None, path_property=True))
    return child, (w, z)
