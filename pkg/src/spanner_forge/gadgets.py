"""Deterministic generators for every graph family used by the certifiers.

Vertex ids are laid out root first, then by distance layer from the root, so
that identical parameters always give identical ids and byte-stable output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError, bfs_distances


@dataclass(frozen=True)
class Gadget:
    graph: Graph
    root: int
    terminals: tuple[int, ...]
    name: str = "gadget"
    terminal_edges: tuple[tuple[int, int], ...] = ()
    root_distance: dict[int, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.terminals:
            raise GraphError("a gadget needs at least one terminal")
        if self.root in self.terminals or len(set(self.terminals)) != len(self.terminals):
            raise GraphError("terminals must be distinct and differ from the root")
        if not self.root_distance:
            dist = bfs_distances(self.graph, self.root)
            object.__setattr__(self, "root_distance", {t: int(dist[t]) for t in self.terminals})

    def vertex(self, label: str) -> int:
        return self.graph.vertex_by_label(label)


def _build(n_labels: list[str], edges: list[tuple[str, str]]) -> Graph:
    ids = {lab: i for i, lab in enumerate(n_labels)}
    return Graph(len(n_labels), [(ids[a], ids[b]) for a, b in edges], dict(enumerate(n_labels)))


def unit_interval_gadget(k: int) -> Gadget:
    """``K_k`` on ``1..k`` plus nonadjacent universal vertices ``x`` (root) and ``y``."""
    if k < 2:
        raise GraphError("unit interval gadget needs k >= 2")
    mids = [str(i) for i in range(1, k + 1)]
    labels = ["x"] + mids + ["y"]
    edges = [(a, b) for i, a in enumerate(mids) for b in mids[i + 1:]]
    edges += [(end, mid) for end in ("x", "y") for mid in mids]
    g = _build(labels, edges)
    return Gadget(g, 0, tuple(range(1, k + 2)), name=f"unit-interval-gadget(k={k})")


@dataclass(frozen=True)
class ChainGadget:
    """Vertex ids of one gadget in a chain, keyed by its own labels."""

    index: int
    x: int
    y: int
    members: dict[str, int]


@dataclass(frozen=True)
class GadgetChain:
    graph: Graph
    k: int
    gadgets: tuple[ChainGadget, ...]


def unit_interval_chain(k: int, m: int) -> GadgetChain:
    """``m`` unit interval gadgets, each ``y`` identified with the next ``x``."""
    if m < 1:
        raise GraphError("chain needs at least one gadget")
    if k < 2:
        raise GraphError("unit interval gadget needs k >= 2")
    labels = {0: "x1"}
    edges = []
    markers = []
    x = 0
    nxt = 1
    for j in range(1, m + 1):
        mids = list(range(nxt, nxt + k))
        y = nxt + k
        nxt = y + 1
        for i, v in enumerate(mids):
            labels[v] = f"{i + 1}@{j}"
        labels[y] = f"y{j}=x{j + 1}" if j < m else f"y{j}"
        edges += [(a, b) for i, a in enumerate(mids) for b in mids[i + 1:]]
        edges += [(end, v) for end in (x, y) for v in mids]
        members = {"x": x, "y": y, **{str(i + 1): v for i, v in enumerate(mids)}}
        markers.append(ChainGadget(j, x, y, members))
        x = y
    return GadgetChain(Graph(nxt, edges, labels), k, tuple(markers))


def pigeonhole_chain_length(k: int) -> tuple[int, int]:
    """Gadget count ``3(k+3)^((k+1)^2)`` and vertex count ``gadgets*(k+2)+1``."""
    if k < 2:
        raise GraphError("k must be at least 2")
    gadgets = 3 * (k + 3) ** ((k + 1) ** 2)
    return gadgets, gadgets * (k + 2) + 1


def ell_house(ell: int) -> Gadget:
    """A ladder of ``ell`` squares with a roof vertex ``r`` on the first rung.

    Rung ``i`` is ``(a_i, b_i)``; the first rung is labelled ``1, 2`` and the
    last ``t1, t2`` (the terminals).
    """
    if ell < 1:
        raise GraphError("ell must be at least 1")

    def rung(i: int) -> tuple[str, str]:
        if i == 0:
            return "1", "2"
        if i == ell:
            return "t1", "t2"
        return f"a{i}", f"b{i}"

    labels = ["r"]
    edges = [("r", "1"), ("r", "2")]
    for i in range(ell + 1):
        a, b = rung(i)
        labels += [a, b]
        edges.append((a, b))
        if i > 0:
            pa, pb = rung(i - 1)
            edges += [(pa, a), (pb, b)]
    g = _build(labels, edges)
    return Gadget(g, 0, (g.vertex_by_label("t1"), g.vertex_by_label("t2")), name=f"{ell}-house")


def house() -> Gadget:
    gd = ell_house(1)
    return Gadget(gd.graph, gd.root, gd.terminals, name="house")


def chordal_gadget(k: int) -> Gadget:
    """``K_{k+2}`` on ``r, 1..k+1``; ``t0`` sees ``1..k+1``; ``t_i`` sees ``t0`` and ``i``."""
    if k < 1:
        raise GraphError("k must be at least 1")
    ones = [str(i) for i in range(1, k + 2)]
    ts = [f"t{i}" for i in range(1, k + 2)]
    labels = ["r"] + ones + ["t0"] + ts
    core = ["r"] + ones
    edges = [(a, b) for i, a in enumerate(core) for b in core[i + 1:]]
    edges += [("t0", o) for o in ones]
    edges += [(t, "t0") for t in ts] + [(t, o) for t, o in zip(ts, ones)]
    g = _build(labels, edges)
    terms = tuple(g.vertex_by_label(f"t{i}") for i in range(k + 2))
    return Gadget(g, 0, terms, name=f"chordal-gadget(k={k})")


def sun_chordal_gadget(k: int) -> Gadget:
    """``chordal_gadget(k)`` core with a 3-sun glued on every ``t0``-``i`` edge.

    The sun on edge ``t0 i`` has central triangle ``(t0, t_i, a_i)``; its ears
    are ``i`` (on ``a_i t0``), ``t'_i`` (on ``t0 t_i``) and ``t''_i`` (on
    ``t_i a_i``). Terminals are all ``t_i, t'_i, t''_i``.
    """
    if k < 1:
        raise GraphError("k must be at least 1")
    ones = [str(i) for i in range(1, k + 2)]
    labels = ["r"] + ones + ["t0"] + [f"a{i}" for i in range(1, k + 2)]
    for i in range(1, k + 2):
        labels += [f"t{i}", f"t{i}'", f"t{i}''"]
    core = ["r"] + ones
    edges = [(a, b) for i, a in enumerate(core) for b in core[i + 1:]]
    edges += [("t0", o) for o in ones]
    for i in range(1, k + 2):
        a, t, t1, t2 = f"a{i}", f"t{i}", f"t{i}'", f"t{i}''"
        edges += [("t0", t), ("t0", a), (t, a), (a, str(i)), (t1, "t0"), (t1, t), (t2, t), (t2, a)]
    g = _build(labels, edges)
    terms = tuple(
        g.vertex_by_label(lab) for i in range(1, k + 2) for lab in (f"t{i}", f"t{i}'", f"t{i}''")
    )
    return Gadget(g, 0, terms, name=f"sun-chordal-gadget(k={k})")


def d_set_words(k: int) -> list[str]:
    """``l``/``r`` words of the binary D-set hierarchy, layer by layer."""
    words = [""]
    layer = [""]
    for _ in range(k):
        layer = [w + s for w in layer for s in "lr"]
        words += layer
    return words


def d_set(word: str, k: int) -> range:
    """Indices of the d vertices in the D set named by ``word``."""
    lo, size = 0, 2**k
    for s in word:
        size //= 2
        if s == "r":
            lo += size
    return range(lo, lo + size)


def star_graph(k: int) -> Gadget:
    """Strongly chordal star graph with ``2^k`` b and d vertices.

    Ids: ``r``, then ``b_0..``, ``d_0..``, then one ``c`` vertex per D set in
    layer order (``c^`` is the root set). Terminals are all c and d vertices
    and the terminal edges are all edges among them.
    """
    if k < 1:
        raise GraphError("k must be at least 1")
    size = 2**k
    bs = [f"b{i}" for i in range(size)]
    ds = [f"d{i}" for i in range(size)]
    words = d_set_words(k)
    cs = [f"c^{w}" for w in words]
    labels = ["r"] + bs + ds + cs
    edges = [("r", b) for b in bs]
    twins = bs + ds
    edges += [(a, b) for i, a in enumerate(twins) for b in twins[i + 1:]]
    for w, c in zip(words, cs):
        for i in d_set(w, k):
            edges += [(c, ds[i]), (c, bs[i])]
    g = _build(labels, edges)
    level2 = set(range(1 + size, g.n))
    terms = tuple(sorted(level2))
    tedges = tuple(e for e in g.edges if e[0] in level2 and e[1] in level2)
    return Gadget(g, 0, terms, name=f"star-graph(k={k})", terminal_edges=tedges)


def single_edge_gadget() -> Gadget:
    return Gadget(Graph(2, [(0, 1)], {0: "r", 1: "t1"}), 0, (1,), name="edge")


@dataclass(frozen=True)
class GadgetTree:
    """Complete j-ary tree of gadget copies, child roots glued to parent terminals."""

    graph: Graph
    gadget: Gadget
    depth: int
    copies: tuple["Copy", ...]
    leaves: tuple[int, ...]

    def copy_root(self, c: "Copy") -> int:
        return c.vertex_map[self.gadget.root]

    def copy_terminals(self, c: "Copy") -> tuple[int, ...]:
        return tuple(c.vertex_map[t] for t in self.gadget.terminals)

    def children(self, c: "Copy") -> list["Copy"]:
        return [d for d in self.copies if d.parent == c.copy_id]


@dataclass(frozen=True)
class Copy:
    copy_id: int
    level: int
    vertex_map: tuple[int, ...]
    parent: int | None = None
    parent_terminal: int | None = None


def gadget_tree(gd: Gadget, depth: int) -> GadgetTree:
    """Glue copies breadth-first; copy 0 keeps the gadget's own vertex ids."""
    if depth < 1:
        raise GraphError("depth must be at least 1")
    g = gd.graph
    n0 = g.n
    copies = [Copy(0, 1, tuple(range(n0)))]
    edges = list(g.edges)
    labels = {v: f"{g.label(v)}#0" for v in range(n0)}
    n = n0
    frontier = [copies[0]]
    for level in range(2, depth + 1):
        nxt = []
        for parent in frontier:
            for t in gd.terminals:
                glue = parent.vertex_map[t]
                vmap = []
                for v in range(n0):
                    if v == gd.root:
                        vmap.append(glue)
                    else:
                        vmap.append(n)
                        labels[n] = f"{g.label(v)}#{len(copies)}"
                        n += 1
                child = Copy(len(copies), level, tuple(vmap), parent.copy_id, glue)
                copies.append(child)
                nxt.append(child)
                edges += [(vmap[a], vmap[b]) for a, b in g.edges]
        frontier = nxt
    leaves = tuple(c.vertex_map[t] for c in frontier for t in gd.terminals)
    host = Graph(n, edges, labels) if depth > 1 else g
    return GadgetTree(host, gd, depth, tuple(copies), leaves)
