"""Checkers: additive surplus, collective spanning, FC trees, jogs, deficiency."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Protocol

from .gadgets import Copy, Gadget, GadgetTree
from .graph import INF, Graph, GraphError, SpanningTree, TreeSystem, bfs_distances

SCHEMA = "spanner-forge/1"

SPANS = "spans"
FAILS = "fails"
BUDGET_EXCEEDED = "budget-exceeded"


@dataclass
class Certificate:
    """Verdict of a spanner or lower-bound query.

    ``fails`` carries a witness pair at which every tree of the system has
    surplus above ``c``; ``spans`` never carries one. Certifiers add their own
    verdict names (``infinity-gadget``, ``d-gadget``, ...).
    """

    verdict: str
    c: int
    mu: int | None = None
    witness: tuple[int, int] | None = None
    per_tree_surplus: list[float] = field(default_factory=list)
    mode: str = "exhaustive"
    trees_examined: int = 0
    elapsed_ms: float | None = None
    instance: dict[str, Any] = field(default_factory=dict)
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness is not None else None,
            "c": self.c,
            "mu": self.mu,
            "per_tree_surplus": [_num(s) for s in self.per_tree_surplus],
            "mode": self.mode,
            "trees_examined": self.trees_examined,
            "elapsed_ms": self.elapsed_ms,
            "instance": self.instance,
            "detail": _jsonable(self.detail),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Certificate":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unknown certificate schema {d.get('schema')!r}")
        w = d.get("witness")
        return cls(
            verdict=d["verdict"],
            c=d["c"],
            mu=d.get("mu"),
            witness=tuple(w) if w is not None else None,
            per_tree_surplus=[float("inf") if s == "inf" else s for s in d.get("per_tree_surplus", [])],
            mode=d.get("mode", "exhaustive"),
            trees_examined=d.get("trees_examined", 0),
            elapsed_ms=d.get("elapsed_ms"),
            instance=d.get("instance", {}),
            detail=d.get("detail", {}),
        )


def _num(x):
    return "inf" if x == INF else int(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and obj == INF:
        return "inf"
    return obj


class Spanner(Protocol):
    def has_edge(self, u: int, v: int) -> bool: ...


def surplus(g: Graph, ts: TreeSystem, u: int, v: int) -> float:
    """Best additive surplus any tree of the system achieves on the pair."""
    if u == v:
        raise GraphError("surplus needs two distinct vertices")
    dg = bfs_distances(g, u)[v]
    return min(t.distance(u, v) for t in ts.trees) - dg


def verify_collective_spanner(g: Graph, ts: TreeSystem, c: int) -> Certificate:
    """Check every pair; the witness is the lexicographically smallest failing pair."""
    if c < 0:
        raise GraphError("surplus bound must be nonnegative")
    worst = [0.0] * ts.mu
    for u in range(g.n):
        dg = bfs_distances(g, u)
        for v in range(u + 1, g.n):
            per_tree = [t.distance(u, v) - dg[v] for t in ts.trees]
            if min(per_tree) > c:
                return Certificate(FAILS, c, ts.mu, (u, v), per_tree, trees_examined=ts.mu)
            worst = [max(a, b) for a, b in zip(worst, per_tree)]
    return Certificate(SPANS, c, ts.mu, None, worst, trees_examined=ts.mu)


def is_additive_spanner(g: Graph, h: Graph, c: int) -> Certificate:
    if h.n != g.n:
        raise GraphError("spanner must have the host's vertex set")
    for u, v in h.edges:
        if not g.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge of the host")
    worst, worst_pair = -1.0, None
    for u in range(g.n):
        dg = bfs_distances(g, u)
        dh = bfs_distances(h, u)
        for v in range(u + 1, g.n):
            s = dh[v] - dg[v]
            if s > worst:
                worst, worst_pair = s, (u, v)
    if worst_pair is None:
        return Certificate(SPANS, c, 1, None, [0])
    verdict = SPANS if worst <= c else FAILS
    return Certificate(
        verdict,
        c,
        1,
        worst_pair if verdict == FAILS else None,
        [worst],
        detail={"worst_pair": list(worst_pair), "edges": h.m},
    )


@dataclass(frozen=True)
class FcCheck:
    ok: bool
    terminal: int | None = None
    copy_id: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _fc_on_gadget(gd: Gadget, dist_from_root) -> int | None:
    for t in gd.terminals:
        if dist_from_root(t) != gd.root_distance[t]:
            return t
    return None


def _restriction(H: GadgetTree, copy: Copy, edges) -> SpanningTree | None:
    """Copy-local tree of ``edges`` on one copy, or None if it is not a spanning tree."""
    local = {v: i for i, v in enumerate(copy.vertex_map)}
    sub = [(local[u], local[v]) for u, v in edges if u in local and v in local]
    g = H.gadget.graph
    if len(sub) != g.n - 1 or not all(g.has_edge(a, b) for a, b in sub):
        return None
    try:
        return SpanningTree(g, sub)
    except GraphError:
        return None


def is_fc_tree(gd: Gadget | GadgetTree, t: SpanningTree) -> FcCheck:
    """Fast-connecting check; for a gadget tree every copy's restriction must be FC.

    A copy whose restriction is not a spanning tree of the copy is reported
    as failing with ``terminal=None``.
    """
    if isinstance(gd, Gadget):
        bad = _fc_on_gadget(gd, lambda x: t.distance(gd.root, x))
        return FcCheck(bad is None, bad)
    for copy in gd.copies:
        local = _restriction(gd, copy, t.edges)
        if local is None:
            return FcCheck(False, None, copy.copy_id)
        root = gd.gadget.root
        bad = _fc_on_gadget(gd.gadget, lambda x: local.distance(root, x))
        if bad is not None:
            return FcCheck(False, copy.vertex_map[bad], copy.copy_id)
    return FcCheck(True)


def spanner_distance(spanner, u: int, v: int) -> float:
    if hasattr(spanner, "distance"):
        return spanner.distance(u, v)
    return bfs_distances(spanner, u)[v]


def deficiency(g: Graph | None, spanner, edge: tuple[int, int]) -> float:
    """``dist_spanner(u, v) - 1`` for a host edge ``uv``.

    ``spanner`` may be a Graph, a SpanningTree or any object with a
    ``distance(u, v)`` method; pass ``g=None`` when the host is implicit.
    """
    u, v = edge
    if g is not None and not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge of the host")
    return spanner_distance(spanner, u, v) - 1


def terminal_edge_span_class(sg: Gadget, t: SpanningTree, e: tuple[int, int]) -> int:
    """+1 when the FC tree joins the terminal edge through a shared parent, else +3."""
    if not is_fc_tree(sg, t):
        raise GraphError("terminal edge classes are only defined for FC trees")
    d = t.distance(*e)
    if d == 2:
        return 1
    if d == 4:
        return 3
    raise GraphError(f"unexpected tree distance {d} on terminal edge {e}")


def _owner_copy(H: GadgetTree) -> dict[int, Copy]:
    owner = {}
    for copy in H.copies:
        for gv, hv in enumerate(copy.vertex_map):
            if gv != H.gadget.root or copy.parent is None:
                owner[hv] = copy
    return owner


def count_jogs(H: GadgetTree, t: SpanningTree, leaf: int, ancestor: int) -> int:
    """Copies on the structural path from ``ancestor`` down to ``leaf`` with a jog.

    A copy jogs when the tree distance from its root to the terminal through
    which the path leaves it exceeds the graph distance.
    """
    owner = _owner_copy(H)
    by_id = {c.copy_id: c for c in H.copies}
    copy = owner.get(leaf)
    if copy is None or leaf == H.copy_root(copy):
        raise GraphError(f"{leaf} is not a terminal of any copy")
    exit_v = leaf
    jogs = 0
    while True:
        croot = H.copy_root(copy)
        local_exit = copy.vertex_map.index(exit_v)
        if t.distance(croot, exit_v) > H.gadget.root_distance.get(local_exit, INF):
            jogs += 1
        if croot == ancestor:
            return jogs
        if copy.parent is None:
            raise GraphError(f"{ancestor} is not an ancestor terminal of {leaf}")
        exit_v = croot
        copy = by_id[copy.parent]
