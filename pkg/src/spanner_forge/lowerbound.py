"""Lower-bound certifiers: FC trees, d- and infinity-gadgets, star covers, gadget trees.

Every exhaustive certifier reduces a tree to a bitmask of the pairs it fails
to span (surplus above ``c``). A collection of trees spans the gadget exactly
when the AND of its masks is zero, so the searches below are over integers.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .gadgets import GadgetChain, Gadget, GadgetTree, star_graph, sun_chordal_gadget
from .graph import (
    INF,
    DisconnectedGraphError,
    Graph,
    GraphError,
    SpanningTree,
    TreeSystem,
    all_pairs_distances,
    bfs_distances,
    enumerate_spanning_trees,
)
from .verify import BUDGET_EXCEEDED, Certificate, verify_collective_spanner

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"

INFINITY_GADGET = "infinity-gadget"
D_GADGET = "d-gadget"
NOT_CERTIFIED = "not-certified"
CONSISTENT = "consistent (sampled)"
NO_COVER = "no-cover"
COVER_FOUND = "cover-found"
NO_D_SYSTEM = "no-d-system"
SPANNING_SYSTEM_FOUND = "spanning-system-found"

THREADS_ENV = "SPANNER_FORGE_THREADS"


@dataclass(frozen=True)
class SearchBudget:
    """Limits for a certifier run; the seed only matters in sampled mode."""

    max_trees: int = 1_000_000
    max_tuples: int = 50_000_000
    seed: int = 0
    mode: str = EXHAUSTIVE

    def __post_init__(self):
        if self.mode not in (EXHAUSTIVE, SAMPLED):
            raise ValueError(f"mode must be {EXHAUSTIVE!r} or {SAMPLED!r}, got {self.mode!r}")
        if self.max_trees < 1 or self.max_tuples < 1:
            raise ValueError("budgets must be positive")


def worker_count() -> int:
    """Process count for partitioned searches, from ``SPANNER_FORGE_THREADS``."""
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


# FC tree spaces


class FcSpace:
    """FC trees of a gadget as independent parent choices.

    Each non-root vertex picks a parent among its neighbours one BFS level
    closer to the root; every such tree is FC. The converse needs every
    non-root vertex to lie on some terminal's tree path in every FC tree.
    ``exact`` records a sufficient condition for that: each vertex is a
    terminal, or the only closer neighbour of such a forced vertex. When it
    fails, enumeration falls back to filtering all spanning trees.
    """

    def __init__(self, gd: Gadget):
        g = gd.graph
        self.gadget = gd
        level = bfs_distances(g, gd.root)
        for v, d in enumerate(level):
            if d == INF:
                raise DisconnectedGraphError(gd.root, v)
        self.level = [int(d) for d in level]
        self.vertices = tuple(v for v in range(g.n) if v != gd.root)
        self.choices = {
            v: tuple(sorted(w for w in g.adj[v] if level[w] == level[v] - 1)) for v in self.vertices
        }
        forced = set(gd.terminals)
        stack = list(forced)
        while stack:
            ch = self.choices[stack.pop()]
            if len(ch) == 1 and ch[0] != gd.root and ch[0] not in forced:
                forced.add(ch[0])
                stack.append(ch[0])
        self.exact = len(forced) == len(self.vertices)

    def product_size(self) -> int:
        return math.prod(len(c) for c in self.choices.values())

    def _level_parents(self) -> Iterator[tuple[int, ...]]:
        n = self.gadget.graph.n
        for combo in itertools.product(*(self.choices[v] for v in self.vertices)):
            parent = [-1] * n
            for v, p in zip(self.vertices, combo):
                parent[v] = p
            yield tuple(parent)

    def _filtered_parents(self, budget: int | None) -> Iterator[tuple[int, ...]]:
        gd = self.gadget
        stream = enumerate_spanning_trees(gd.graph, budget)
        for t in stream:
            if all(t.distance(gd.root, x) == gd.root_distance[x] for x in gd.terminals):
                yield tuple(t.parents(gd.root))
        if stream.exceeded:
            raise _BudgetHit(stream.emitted)

    def parent_arrays(self, budget: int | None = None) -> Iterator[tuple[int, ...]]:
        """Deterministic stream of FC trees as parent arrays (root has ``-1``)."""
        if self.exact:
            if budget is not None and self.product_size() > budget:
                raise _BudgetHit(self.product_size())
            return self._level_parents()
        return self._filtered_parents(budget)

    def sample(self, rng: random.Random) -> tuple[int, ...]:
        """Uniform independent parent choice per vertex."""
        if not self.exact:
            raise GraphError("sampling needs an FC space where every vertex is forced")
        parent = [-1] * self.gadget.graph.n
        for v in self.vertices:
            ch = self.choices[v]
            parent[v] = ch[rng.randrange(len(ch))]
        return tuple(parent)

    def tree(self, parent: Sequence[int]) -> SpanningTree:
        return SpanningTree.from_parents(self.gadget.graph, parent, check=False)


class _BudgetHit(Exception):
    def __init__(self, seen: int):
        super().__init__(seen)
        self.seen = seen


def enumerate_fc_trees(gd: Gadget, budget: int | None = None) -> Iterator[SpanningTree]:
    """Every FC tree of ``gd`` exactly once, in a fixed order."""
    space = FcSpace(gd)
    for parent in space.parent_arrays(budget):
        yield space.tree(parent)


def _depths(parent: Sequence[int]) -> list[int]:
    depth = [-1] * len(parent)

    def walk(v: int) -> int:
        if depth[v] < 0:
            depth[v] = 0 if parent[v] < 0 else walk(parent[v]) + 1
        return depth[v]

    for v in range(len(parent)):
        walk(v)
    return depth


def _parent_distance(parent: Sequence[int], depth: Sequence[int], u: int, v: int) -> int:
    d = 0
    while u != v:
        if depth[u] >= depth[v]:
            u = parent[u]
        else:
            v = parent[v]
        d += 1
    return d


def terminal_pairs(gd: Gadget) -> list[tuple[int, int]]:
    return sorted((min(a, b), max(a, b)) for a, b in itertools.combinations(gd.terminals, 2))


class _Profile:
    """Surplus vectors of trees over a fixed list of pairs."""

    def __init__(self, g: Graph, pairs: Sequence[tuple[int, int]], c: int):
        self.pairs = list(pairs)
        self.c = c
        self.dg = []
        for u, v in self.pairs:
            dist = bfs_distances(g, u)[v]
            if dist == INF:
                raise DisconnectedGraphError(u, v)
            self.dg.append(int(dist))

    def surpluses(self, parent: Sequence[int]) -> list[int]:
        depth = _depths(parent)
        return [_parent_distance(parent, depth, u, v) - d for (u, v), d in zip(self.pairs, self.dg)]

    def mask(self, surpluses: Sequence[int]) -> int:
        m = 0
        for i, s in enumerate(surpluses):
            if s > self.c:
                m |= 1 << i
        return m


def _lowest_bit(m: int) -> int:
    return (m & -m).bit_length() - 1


# Multiset search over bad-pair masks


def _search_partition(masks: Sequence[int], d: int, lead: int, limit: int) -> tuple[tuple[int, ...] | None, int, bool]:
    """Multisets of ``d`` mask indices whose smallest index is ``lead``.

    Returns the first multiset (padded by repetition) whose AND is zero, the
    number of multisets examined, and whether ``limit`` was hit.
    """
    examined = 0
    chosen = [lead]

    def rec(start: int, acc: int) -> bool:
        nonlocal examined
        if acc == 0 or len(chosen) == d:
            examined += 1
            if examined > limit:
                raise _BudgetHit(examined)
            return acc == 0
        for j in range(start, len(masks)):
            chosen.append(j)
            if rec(j, acc & masks[j]):
                return True
            chosen.pop()
        return False

    try:
        found = rec(lead, masks[lead])
    except _BudgetHit:
        return None, examined, True
    if found:
        return tuple(chosen + [chosen[-1]] * (d - len(chosen))), examined, False
    return None, examined, False


def _partition_job(args):
    return _search_partition(*args)


@dataclass
class _SearchOutcome:
    found: tuple[int, ...] | None
    examined: int
    exceeded: bool


def exhaust_multisets(masks: Sequence[int], d: int, limit: int, workers: int | None = None) -> _SearchOutcome:
    """Search all ``d``-multisets of ``masks`` for one with zero AND.

    The space is partitioned by smallest index; partitions are merged in
    index order, so the outcome does not depend on ``workers``.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    workers = worker_count() if workers is None else workers
    jobs = [(tuple(masks), d, lead, limit) for lead in range(len(masks))]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_partition_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = _lazy(jobs)
    total = 0
    for found, examined, exceeded in results:
        total += examined
        if exceeded or total > limit:
            return _SearchOutcome(None, min(total, limit), True)
        if found is not None:
            return _SearchOutcome(found, total, False)
    return _SearchOutcome(None, total, False)


def _lazy(jobs):
    for job in jobs:
        yield _search_partition(*job)


def _distinct(masks: Sequence[int]) -> tuple[list[int], list[int]]:
    """Distinct masks in first-seen order, with a representative tree index each."""
    seen: dict[int, int] = {}
    for i, m in enumerate(masks):
        seen.setdefault(m, i)
    return list(seen), list(seen.values())


def _instance(gd: Gadget, **extra) -> dict:
    return {"gadget": gd.name, "n": gd.graph.n, "m": gd.graph.m, **extra}


def _budget_cert(c: int, mode: str, trees: int, instance: dict, **detail) -> Certificate:
    return Certificate(BUDGET_EXCEEDED, c, None, mode=mode, trees_examined=trees, instance=instance, detail=detail)


def _fc_masks(space: FcSpace, prof: _Profile, budget: SearchBudget):
    """All FC trees as (parent arrays, surplus rows, masks); raises _BudgetHit."""
    parents, rows, masks = [], [], []
    for p in space.parent_arrays(budget.max_trees):
        if len(parents) >= budget.max_trees:
            raise _BudgetHit(len(parents) + 1)
        s = prof.surpluses(p)
        parents.append(p)
        rows.append(s)
        masks.append(prof.mask(s))
    return parents, rows, masks


# Certifiers


def certify_infinity_gadget(
    gd: Gadget,
    c: int,
    budget: SearchBudget = SearchBudget(),
    mode: str = "pair",
    max_subset: int = 3,
) -> Certificate:
    """Certify that no collection of FC trees ``+c`` spans ``gd``.

    ``pair`` mode looks for a terminal pair with surplus above ``c`` in every
    FC tree. Such a pair exists exactly when the collection of all FC trees
    fails, so this is also necessary. ``subsets`` mode checks every
    collection of at most ``max_subset`` FC trees explicitly; it certifies
    infinity only when that includes the full collection.
    """
    if mode not in ("pair", "subsets"):
        raise ValueError("mode must be 'pair' or 'subsets'")
    space = FcSpace(gd)
    prof = _Profile(gd.graph, terminal_pairs(gd), c)
    inst = _instance(gd, fc_exact=space.exact)
    try:
        _, rows, masks = _fc_masks(space, prof, budget)
    except _BudgetHit as hit:
        return _budget_cert(c, EXHAUSTIVE, hit.seen, inst, max_trees=budget.max_trees)
    n_fc = len(masks)
    common = -1
    for m in masks:
        common &= m
    if mode == "pair":
        if common:
            i = _lowest_bit(common)
            return Certificate(
                INFINITY_GADGET,
                c,
                n_fc,
                prof.pairs[i],
                [row[i] for row in rows],
                trees_examined=n_fc,
                instance=inst,
                detail={"fc_trees": n_fc, "witness_graph_distance": prof.dg[i]},
            )
        return Certificate(
            NOT_CERTIFIED,
            c,
            n_fc,
            trees_examined=n_fc,
            instance=inst,
            detail={"fc_trees": n_fc, "reason": "every terminal pair is spanned by some FC tree"},
        )
    bound = min(max_subset, n_fc)
    examined = 0
    for size in range(1, bound + 1):
        for combo in itertools.combinations(range(n_fc), size):
            examined += 1
            if examined > budget.max_tuples:
                return _budget_cert(c, EXHAUSTIVE, n_fc, inst, max_tuples=budget.max_tuples)
            acc = -1
            for j in combo:
                acc &= masks[j]
            if acc == 0:
                return Certificate(
                    NOT_CERTIFIED,
                    c,
                    size,
                    trees_examined=n_fc,
                    instance=inst,
                    detail={"fc_trees": n_fc, "spanning_subset": list(combo), "subsets_examined": examined},
                )
    verdict = INFINITY_GADGET if bound == n_fc else D_GADGET
    witness = prof.pairs[_lowest_bit(common)] if common else None
    return Certificate(
        verdict,
        c,
        bound,
        witness,
        [row[_lowest_bit(common)] for row in rows] if common else [],
        trees_examined=n_fc,
        instance=inst,
        detail={"fc_trees": n_fc, "max_subset": bound, "subsets_examined": examined},
    )


def certify_d_gadget(
    gd: Gadget,
    c: int,
    d: int,
    budget: SearchBudget = SearchBudget(),
    pairs: Sequence[tuple[int, int]] | None = None,
    workers: int | None = None,
) -> Certificate:
    """Certify that no ``d`` FC trees collectively ``+c`` span the terminal pairs.

    Exhaustive mode walks all ``d``-multisets of distinct failure profiles;
    sampled mode draws ``max_tuples`` random ``d``-tuples and can only return
    ``consistent (sampled)`` or an explicit spanning collection.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    pairs = terminal_pairs(gd) if pairs is None else sorted((min(a, b), max(a, b)) for a, b in pairs)
    space = FcSpace(gd)
    prof = _Profile(gd.graph, pairs, c)
    inst = _instance(gd, d=d, pairs=len(pairs), fc_exact=space.exact)
    if budget.mode == SAMPLED:
        return _sampled_d_gadget(space, prof, d, budget, inst)
    try:
        parents, rows, masks = _fc_masks(space, prof, budget)
    except _BudgetHit as hit:
        return _budget_cert(c, EXHAUSTIVE, hit.seen, inst, max_trees=budget.max_trees)
    n_fc = len(masks)
    distinct, reps = _distinct(masks)
    out = exhaust_multisets(distinct, d, budget.max_tuples, workers)
    detail = {"fc_trees": n_fc, "distinct_profiles": len(distinct), "tuples_examined": out.examined}
    if out.exceeded:
        return _budget_cert(c, EXHAUSTIVE, n_fc, inst, max_tuples=budget.max_tuples, **detail)
    if out.found is not None:
        trees = [reps[j] for j in out.found]
        detail["spanning_trees"] = trees
        detail["spanning_parents"] = [list(parents[t]) for t in trees]
        return Certificate(
            NOT_CERTIFIED, c, d, None, [max(rows[t]) for t in trees], trees_examined=n_fc, instance=inst, detail=detail
        )
    common = -1
    for m in masks:
        common &= m
    first = masks[0]
    example = _lowest_bit(first)
    detail["example"] = {"trees": [0] * d, "pair": list(prof.pairs[example])}
    witness = prof.pairs[_lowest_bit(common)] if common else None
    per_tree = [row[_lowest_bit(common)] for row in rows] if common else []
    return Certificate(D_GADGET, c, d, witness, per_tree, trees_examined=n_fc, instance=inst, detail=detail)


def _sampled_d_gadget(space: FcSpace, prof: _Profile, d: int, budget: SearchBudget, inst: dict) -> Certificate:
    rng = random.Random(budget.seed)
    cache: dict[tuple[int, ...], int] = {}
    for trial in range(budget.max_tuples):
        acc = -1
        tup = []
        for _ in range(d):
            p = space.sample(rng)
            tup.append(p)
            if p not in cache:
                cache[p] = prof.mask(prof.surpluses(p))
            acc &= cache[p]
        if acc == 0:
            return Certificate(
                NOT_CERTIFIED,
                prof.c,
                d,
                mode=SAMPLED,
                trees_examined=len(cache),
                instance=inst,
                detail={"seed": budget.seed, "tuples_sampled": trial + 1, "spanning_parents": [list(p) for p in tup]},
            )
    return Certificate(
        CONSISTENT,
        prof.c,
        d,
        mode=SAMPLED,
        trees_examined=len(cache),
        instance=inst,
        detail={"seed": budget.seed, "tuples_sampled": budget.max_tuples, "failures": budget.max_tuples},
    )


def star_cover_masks(gd: Gadget, parents: np.ndarray) -> np.ndarray:
    """Boolean rows: terminal edge ``e`` is ``+1`` spanned (shared parent) by tree ``i``.

    In an FC tree of a star graph both ends of a terminal edge sit on level 2,
    so the tree distance is 2 exactly when they share a parent and 4 otherwise.
    """
    u = np.array([e[0] for e in gd.terminal_edges])
    v = np.array([e[1] for e in gd.terminal_edges])
    return parents[:, u] == parents[:, v]


def star_fc_cover_check(
    k: int, delta: int, budget: SearchBudget = SearchBudget(), workers: int | None = None
) -> Certificate:
    """Check that no ``delta`` FC trees of ``star_graph(k)`` ``+1`` span every terminal edge."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    gd = star_graph(k)
    space = FcSpace(gd)
    edges = list(gd.terminal_edges)
    inst = _instance(gd, k=k, delta=delta, terminal_edges=len(edges))
    if budget.mode == SAMPLED:
        return _sampled_star_cover(gd, space, delta, budget, inst)
    try:
        parents = list(space.parent_arrays(budget.max_trees))
    except _BudgetHit as hit:
        return _budget_cert(1, EXHAUSTIVE, hit.seen, inst, max_trees=budget.max_trees)
    covered = star_cover_masks(gd, np.array(parents, dtype=np.int64))
    full = (1 << len(edges)) - 1
    uncovered = []
    for row in covered:
        m = full
        for i in np.flatnonzero(row):
            m &= ~(1 << int(i))
        uncovered.append(m)
    distinct, reps = _distinct(uncovered)
    out = exhaust_multisets(distinct, delta, budget.max_tuples, workers)
    detail = {"fc_trees": len(parents), "distinct_profiles": len(distinct), "tuples_examined": out.examined}
    if out.exceeded:
        return _budget_cert(1, EXHAUSTIVE, len(parents), inst, max_tuples=budget.max_tuples, **detail)
    if out.found is not None:
        detail["covering_trees"] = [reps[j] for j in out.found]
        return Certificate(COVER_FOUND, 1, delta, trees_examined=len(parents), instance=inst, detail=detail)
    examples = []
    for combo in itertools.islice(itertools.combinations_with_replacement(range(len(parents)), delta), 10):
        acc = full
        for j in combo:
            acc &= uncovered[j]
        examples.append({"trees": list(combo), "uncovered": list(edges[_lowest_bit(acc)])})
    detail["uncovered_examples"] = examples
    return Certificate(NO_COVER, 1, delta, trees_examined=len(parents), instance=inst, detail=detail)


def _sampled_star_cover(gd: Gadget, space: FcSpace, delta: int, budget: SearchBudget, inst: dict) -> Certificate:
    rng = np.random.default_rng(budget.seed)
    n = gd.graph.n
    total = budget.max_tuples
    chunk = 10_000
    failures = 0
    first_cover = None
    for start in range(0, total, chunk):
        size = min(chunk, total - start)
        parents = np.full((size * delta, n), -1, dtype=np.int64)
        for v in space.vertices:
            ch = np.array(space.choices[v], dtype=np.int64)
            parents[:, v] = ch[rng.integers(len(ch), size=size * delta)]
        cov = star_cover_masks(gd, parents).reshape(size, delta, -1).any(axis=1).all(axis=1)
        failures += int(size - cov.sum())
        if first_cover is None and cov.any():
            first_cover = start + int(np.flatnonzero(cov)[0])
    detail = {"seed": budget.seed, "tuples_sampled": total, "failures": failures}
    if first_cover is not None:
        detail["first_covering_sample"] = first_cover
        return Certificate(COVER_FOUND, 1, delta, mode=SAMPLED, trees_examined=total * delta, instance=inst, detail=detail)
    return Certificate(CONSISTENT, 1, delta, mode=SAMPLED, trees_examined=total * delta, instance=inst, detail=detail)


def sun_pairs(gd: Gadget) -> list[tuple[int, int]]:
    """The ``t_i t'_i`` and ``t_i t''_i`` pairs of a sun-chordal gadget."""
    out = []
    i = 1
    while True:
        try:
            t = gd.vertex(f"t{i}")
        except KeyError:
            return out
        out += [(t, gd.vertex(f"t{i}'")), (t, gd.vertex(f"t{i}''"))]
        i += 1


def sun_gadget_check(k: int, c: int = 3, d: int = 1, budget: SearchBudget = SearchBudget()) -> Certificate:
    """d-gadget certification of ``sun_chordal_gadget(k)`` on its sun terminal pairs."""
    gd = sun_chordal_gadget(k)
    return certify_d_gadget(gd, c, d, budget, pairs=sun_pairs(gd))


def master_depth_bound(c: int, d: int) -> int:
    """Depth ``C_d`` with ``C_1 = ceil((c+2)/2)`` and ``C_k = k*c*C_{k-1} + 1``."""
    if c < 2 or d < 1:
        raise ValueError("need c >= 2 and d >= 1")
    bound = -(-(c + 2) // 2)
    for k in range(2, d + 1):
        bound = k * c * bound + 1
    return bound


# Unit interval chain claim


class RestrictionMismatch(GraphError):
    """The tree does not restrict to the same labelled tree on the chosen gadgets."""


@dataclass(frozen=True)
class Claim1Report:
    i: str
    provides_path: bool
    edges_present: bool
    missing: tuple[tuple[int, str], ...]
    tree_distance: int
    graph_distance: int

    @property
    def inflation(self) -> int:
        return self.tree_distance - self.graph_distance

    @property
    def holds(self) -> bool:
        return not self.provides_path or self.edges_present

    def __bool__(self) -> bool:
        return self.holds


def _labelled_restriction(t: SpanningTree, members: dict[str, int]) -> frozenset[frozenset[str]]:
    name = {v: lab for lab, v in members.items()}
    return frozenset(frozenset((name[u], name[v])) for u, v in t.edges if u in name and v in name)


def claim1_check(chain: GadgetChain, t: SpanningTree, a: int, b: int, c: int, i: int | str) -> Claim1Report:
    """Check the edge claim for gadgets ``a < b < c`` (1-based) and K_k label ``i``.

    If ``t`` gives a path between ``A_i`` and ``C_i`` at most one longer than
    in the graph, the ``xi`` and ``yi`` edges must be in ``t`` in all three
    gadgets. The restriction of ``t`` to the three gadgets must be the same
    labelled tree; otherwise ``RestrictionMismatch`` is raised.
    """
    if not 1 <= a < b < c <= len(chain.gadgets):
        raise GraphError("need gadget indices 1 <= a < b < c <= m")
    i = str(i)
    if not 1 <= int(i) <= chain.k:
        raise GraphError(f"label {i} is not in 1..{chain.k}")
    gads = [chain.gadgets[j - 1] for j in (a, b, c)]
    restr = [_labelled_restriction(t, g.members) for g in gads]
    if not restr[0] == restr[1] == restr[2]:
        raise RestrictionMismatch(f"tree restrictions to gadgets {a}, {b}, {c} differ")
    ai, ci = gads[0].members[i], gads[2].members[i]
    dt = int(t.distance(ai, ci))
    dg = int(bfs_distances(chain.graph, ai)[ci])
    missing = []
    for g in gads:
        for end in ("x", "y"):
            if not t.has_edge(g.members[end], g.members[i]):
                missing.append((g.index, end + i))
    return Claim1Report(i, dt <= dg + 1, not missing, tuple(missing), dt, dg)


# Trees of gadgets


def _copies_of(H: GadgetTree | Graph):
    """(local graph, local root, [(vertex_map, parent glue or None)]) in BFS order."""
    if isinstance(H, GadgetTree):
        gd = H.gadget
        return H.graph, gd.graph, gd.root, [(c.vertex_map, c.parent_terminal) for c in H.copies]
    return H, H, 0, [(tuple(range(H.n)), None)]


def gadget_tree_spanner_search(
    H: GadgetTree | Graph, c: int, d: int, budget: SearchBudget = SearchBudget()
) -> Certificate:
    """Search for ``d`` spanning trees of ``H`` that collectively ``+c`` span it.

    Copies of a gadget tree meet only at cut vertices, so a spanning tree of
    ``H`` is exactly one spanning tree per copy. Copies are fixed in BFS order;
    tree distances from a new copy to everything fixed so far follow from the
    distance to its glue vertex, and a partial choice is rejected at the first
    pair no tree spans. A plain graph is treated as a single copy.
    """
    if d < 1 or c < 0:
        raise ValueError("need d >= 1 and c >= 0")
    host, local, lroot, copies = _copies_of(H)
    inst = {"n": host.n, "m": host.m, "copies": len(copies), "d": d}
    if isinstance(H, GadgetTree):
        inst.update(gadget=H.gadget.name, depth=H.depth)
    stream = enumerate_spanning_trees(local, budget.max_trees)
    ltrees = list(stream)
    if stream.exceeded:
        return _budget_cert(c, budget.mode, stream.emitted, inst, max_trees=budget.max_trees)
    inst["local_trees"] = len(ltrees)
    ldist = [t.distances() for t in ltrees]
    dh = all_pairs_distances(host)
    if budget.mode == SAMPLED:
        return _sampled_gadget_tree(host, ltrees, copies, c, d, budget, inst)

    n = host.n
    dist = [[[0] * n for _ in range(n)] for _ in range(d)]
    placed: list[int] = []
    choice: list[tuple[int, ...]] = []
    nodes = 0
    last_fail: list[tuple[int, int] | None] = [None] * len(copies)

    def options(ties: tuple[bool, ...]) -> Iterator[tuple[int, ...]]:
        for combo in itertools.product(range(len(ltrees)), repeat=d):
            if all(not tie or combo[s] <= combo[s + 1] for s, tie in enumerate(ties)):
                yield combo

    def place(ci: int, combo: tuple[int, ...]) -> list[int]:
        vmap, glue = copies[ci]
        new = [(lv, hv) for lv, hv in enumerate(vmap) if glue is None or lv != lroot]
        before = list(placed)
        for s, ti in enumerate(combo):
            ld = ldist[ti]
            row = dist[s]
            for lv, hv in new:
                for lw, hw in new:
                    row[hv][hw] = ld[lv][lw]
                if glue is not None:
                    up = ld[lv][lroot]
                    grow = row[glue]
                    for x in before:
                        row[hv][x] = row[x][hv] = up + grow[x]
        return [hv for _, hv in new]

    def spans(ci: int, new: list[int]) -> bool:
        lf = last_fail[ci]
        if lf is not None and lf[0] in new and lf[1] in new + placed:
            if min(dist[s][lf[0]][lf[1]] for s in range(d)) - dh[lf[0], lf[1]] > c:
                return False
        for idx, w in enumerate(new):
            for x in new[idx + 1:] + placed:
                if min(dist[s][w][x] for s in range(d)) - dh[w, x] > c:
                    last_fail[ci] = (w, x)
                    return False
        return True

    def rec(ci: int, ties: tuple[bool, ...]) -> bool:
        nonlocal nodes
        if ci == len(copies):
            return True
        for combo in options(ties):
            nodes += 1
            if nodes > budget.max_tuples:
                raise _BudgetHit(nodes)
            new = place(ci, combo)
            if spans(ci, new):
                placed.extend(new)
                choice.append(combo)
                nxt = tuple(tie and combo[s] == combo[s + 1] for s, tie in enumerate(ties))
                if rec(ci + 1, nxt):
                    return True
                choice.pop()
                del placed[len(placed) - len(new):]
        return False

    try:
        found = rec(0, (True,) * (d - 1))
    except _BudgetHit:
        return _budget_cert(c, EXHAUSTIVE, len(ltrees), inst, max_tuples=budget.max_tuples, nodes=nodes)
    if not found:
        return Certificate(NO_D_SYSTEM, c, d, trees_examined=len(ltrees), instance=inst, detail={"nodes": nodes})
    system = _assemble(host, ltrees, copies, [[combo[s] for combo in choice] for s in range(d)])
    check = verify_collective_spanner(host, system, c)
    detail = {"nodes": nodes, "per_copy_choice": [list(x) for x in choice], "verified": check.verdict}
    return Certificate(
        SPANNING_SYSTEM_FOUND,
        c,
        d,
        None,
        check.per_tree_surplus,
        trees_examined=len(ltrees),
        instance=inst,
        detail=detail,
    )


def _assemble(host: Graph, ltrees, copies, picks: list[list[int]]) -> TreeSystem:
    trees = []
    for pick in picks:
        edges = []
        for (vmap, _), ti in zip(copies, pick):
            edges += [(vmap[a], vmap[b]) for a, b in ltrees[ti].edges]
        trees.append(SpanningTree(host, edges))
    return TreeSystem(host, trees)


def _sampled_gadget_tree(host, ltrees, copies, c, d, budget, inst) -> Certificate:
    rng = random.Random(budget.seed)
    for trial in range(budget.max_tuples):
        picks = [[rng.randrange(len(ltrees)) for _ in copies] for _ in range(d)]
        cert = verify_collective_spanner(host, _assemble(host, ltrees, copies, picks), c)
        if cert.verdict == "spans":
            return Certificate(
                SPANNING_SYSTEM_FOUND,
                c,
                d,
                None,
                cert.per_tree_surplus,
                mode=SAMPLED,
                trees_examined=(trial + 1) * d,
                instance=inst,
                detail={"seed": budget.seed, "picks": picks},
            )
    return Certificate(
        CONSISTENT,
        c,
        d,
        mode=SAMPLED,
        trees_examined=budget.max_tuples * d,
        instance=inst,
        detail={"seed": budget.seed, "tuples_sampled": budget.max_tuples},
    )
