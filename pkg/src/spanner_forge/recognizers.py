"""Certificates of membership in chordal, strongly chordal and weakly chordal graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .graph import Graph, SizeLimitError
from .intervals import IntervalModel, graph_from_interval_model, is_unit_model

__all__ = [
    "EliminationOrdering",
    "Recognition",
    "chordal_ordering",
    "find_hole",
    "graph_from_interval_model",
    "is_simple_ordering",
    "is_perfect_ordering",
    "is_unit_model",
    "is_weakly_chordal",
    "simple_elimination_ordering",
    "IntervalModel",
]


@dataclass(frozen=True)
class EliminationOrdering:
    order: tuple[int, ...]
    kind: Literal["perfect", "simple"]

    def replay(self, g: Graph) -> bool:
        if self.kind == "perfect":
            return is_perfect_ordering(g, self.order)
        return is_simple_ordering(g, self.order)

    def to_json(self) -> list[int]:
        return list(self.order)


@dataclass(frozen=True)
class Recognition:
    ok: bool
    ordering: EliminationOrdering | None = None
    witness: tuple[int, ...] | None = None
    witness_in: str | None = None


def _is_permutation(g: Graph, order: Sequence[int]) -> bool:
    return sorted(order) == list(range(g.n))


def is_perfect_ordering(g: Graph, order: Sequence[int]) -> bool:
    """Each vertex's neighbours later in ``order`` must form a clique."""
    if not _is_permutation(g, order):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1:]:
                if not g.has_edge(a, b):
                    return False
    return True


def _closed_nbhd(g: Graph, v: int, alive: set[int]) -> frozenset[int]:
    return frozenset((g.adj[v] & alive) | {v})


def _incomparable_pair(g: Graph, v: int, alive: set[int]) -> tuple[int, int] | None:
    nbrs = sorted(g.adj[v] & alive)
    closed = {u: _closed_nbhd(g, u, alive) for u in nbrs}
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            if not (closed[a] <= closed[b] or closed[b] <= closed[a]):
                return a, b
    return None


def is_simple_ordering(g: Graph, order: Sequence[int]) -> bool:
    """Each vertex must be simple in the graph induced by itself and later vertices."""
    if not _is_permutation(g, order):
        return False
    alive = set(range(g.n))
    for v in order:
        if _incomparable_pair(g, v, alive) is not None:
            return False
        alive.remove(v)
    return True


def find_hole(g: Graph, min_length: int) -> tuple[int, ...] | None:
    """Some induced cycle with at least ``min_length`` vertices, found by brute force."""
    n = g.n
    for s in range(n):
        path = [s]
        on_path = {s}

        def extend() -> tuple[int, ...] | None:
            last = path[-1]
            for w in sorted(g.adj[last]):
                if w <= s or w in on_path:
                    continue
                touches = [p for p in path[:-1] if g.has_edge(p, w)]
                if len(path) >= 2 and touches == [s]:
                    if len(path) + 1 >= min_length and path[1] < w:
                        return tuple(path + [w])
                    continue
                if touches:
                    continue
                path.append(w)
                on_path.add(w)
                found = extend()
                path.pop()
                on_path.discard(w)
                if found:
                    return found
            return None

        hole = extend()
        if hole:
            return hole
    return None


def chordal_ordering(g: Graph) -> Recognition:
    """Maximum cardinality search (ties to lowest id) plus verification.

    On failure the witness is an induced cycle of length at least 4.
    """
    n = g.n
    weight = [0] * n
    numbered = [False] * n
    visit: list[int] = []
    for _ in range(n):
        v = max((u for u in range(n) if not numbered[u]), key=lambda u: (weight[u], -u))
        numbered[v] = True
        visit.append(v)
        for w in g.adj[v]:
            if not numbered[w]:
                weight[w] += 1
    order = tuple(reversed(visit))
    if is_perfect_ordering(g, order):
        return Recognition(True, EliminationOrdering(order, "perfect"))
    return Recognition(False, witness=find_hole(g, 4), witness_in="graph")


def simple_elimination_ordering(g: Graph, prefer: Sequence[int] | None = None) -> Recognition:
    """Greedy removal of simple vertices.

    Simplicity survives vertex deletion in strongly chordal graphs, so any
    greedy choice succeeds on them. ``prefer`` sets the order in which
    candidates are tried (default: increasing id). When no remaining vertex is
    simple the remaining vertex set is returned as the witness.
    """
    rank = {v: i for i, v in enumerate(prefer)} if prefer is not None else {}
    alive = set(range(g.n))
    order: list[int] = []
    while alive:
        for v in sorted(alive, key=lambda u: (rank.get(u, len(rank)), u)):
            if _incomparable_pair(g, v, alive) is None:
                order.append(v)
                alive.remove(v)
                break
        else:
            return Recognition(False, witness=tuple(sorted(alive)), witness_in="graph")
    return Recognition(True, EliminationOrdering(tuple(order), "simple"))


WEAKLY_CHORDAL_MAX_VERTICES = 64


def is_weakly_chordal(g: Graph) -> Recognition:
    """No hole of length >= 5 in the graph or its complement."""
    if g.n > WEAKLY_CHORDAL_MAX_VERTICES:
        raise SizeLimitError(f"weakly chordal check is brute force; n <= {WEAKLY_CHORDAL_MAX_VERTICES}")
    hole = find_hole(g, 5)
    if hole:
        return Recognition(False, witness=hole, witness_in="graph")
    antihole = find_hole(g.complement(), 5)
    if antihole:
        return Recognition(False, witness=antihole, witness_in="complement")
    return Recognition(True)
