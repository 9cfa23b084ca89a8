import networkx as nx
import pytest

from spanner_forge.gadgets import (
    chordal_gadget,
    d_set,
    d_set_words,
    ell_house,
    gadget_tree,
    house,
    pigeonhole_chain_length,
    single_edge_gadget,
    star_graph,
    sun_chordal_gadget,
    unit_interval_chain,
    unit_interval_gadget,
)
from spanner_forge.graph import GraphError, bfs_distances
from spanner_forge.intervals import graph_from_interval_model, is_unit_model, unit_chain_model

from .test_graph import to_nx


def test_house_layout():
    gd = house()
    g = gd.graph
    assert (g.n, g.m) == (5, 6)
    assert g.label(gd.root) == "r"
    assert [g.label(t) for t in gd.terminals] == ["t1", "t2"]
    assert gd.terminals == (3, 4)
    assert gd.root_distance == {3: 2, 4: 2}


@pytest.mark.parametrize("ell", [1, 2, 3, 5])
def test_ell_house_counts(ell):
    gd = ell_house(ell)
    assert gd.graph.n == 2 * ell + 3
    assert gd.graph.m == 3 * ell + 3
    assert set(gd.root_distance.values()) == {ell + 1}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_chordal_gadget_counts(k):
    gd = chordal_gadget(k)
    assert gd.graph.n == 2 * k + 4
    assert len(gd.terminals) == k + 2
    assert set(gd.root_distance.values()) == {2}
    assert all(gd.graph.has_edge(gd.vertex("t0"), gd.vertex(f"t{i}")) for i in range(1, k + 2))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sun_gadget_contains_a_sun_per_edge(k):
    gd = sun_chordal_gadget(k)
    g = gd.graph
    assert len(gd.terminals) == 3 * (k + 1)
    for i in range(1, k + 2):
        t0, t, a = gd.vertex("t0"), gd.vertex(f"t{i}"), gd.vertex(f"a{i}")
        assert g.has_edge(t0, t) and g.has_edge(t, a) and g.has_edge(a, t0)
        ears = [(gd.vertex(str(i)), (a, t0)), (gd.vertex(f"t{i}'"), (t0, t)), (gd.vertex(f"t{i}''"), (t, a))]
        for ear, (p, q) in ears:
            assert g.has_edge(ear, p) and g.has_edge(ear, q)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_star_graph_closed_forms(k):
    gd = star_graph(k)
    g = gd.graph
    size = 2**k
    assert g.n == 1 + 2 * size + (2 * size - 1)
    twins = 2 * size
    assert g.m == size + twins * (twins - 1) // 2 + 2 * size * (k + 1)
    dist = bfs_distances(g, gd.root)
    level2 = {v for v in range(g.n) if dist[v] == 2}
    assert set(gd.terminals) == level2
    assert set(gd.terminal_edges) == {e for e in g.edges if e[0] in level2 and e[1] in level2}
    assert len(gd.terminal_edges) == size * (size - 1) // 2 + size * (k + 1)


def test_d_sets_form_a_binary_hierarchy():
    k = 3
    words = d_set_words(k)
    assert len(words) == 2 ** (k + 1) - 1
    assert list(d_set("", k)) == list(range(8))
    assert list(d_set("l", k)) == [0, 1, 2, 3]
    assert list(d_set("rl", k)) == [4, 5]
    assert list(d_set("rrr", k)) == [7]


def test_star_graph_twins():
    gd = star_graph(2)
    g = gd.graph
    for i in range(4):
        b, d = gd.vertex(f"b{i}"), gd.vertex(f"d{i}")
        assert g.adj[b] - {d, gd.root} == g.adj[d] - {b}


def test_unit_interval_gadget():
    gd = unit_interval_gadget(3)
    g = gd.graph
    assert (g.n, g.m) == (5, 9)
    assert not g.has_edge(gd.vertex("x"), gd.vertex("y"))


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_unit_interval_chain_has_a_unit_model(k, m):
    chain = unit_interval_chain(k, m)
    model = unit_chain_model(k, m)
    assert is_unit_model(model)
    g = graph_from_interval_model(model)
    assert g.n == chain.graph.n == m * (k + 1) + 1
    assert g.edges == chain.graph.edges


def test_chain_identifies_y_with_next_x():
    chain = unit_interval_chain(2, 3)
    for a, b in zip(chain.gadgets, chain.gadgets[1:]):
        assert a.y == b.x


def test_pigeonhole_chain_length_exact():
    assert pigeonhole_chain_length(2) == (5_859_375, 23_437_501)
    gadgets, vertices = pigeonhole_chain_length(3)
    assert gadgets == 3 * 6**16 and vertices == gadgets * 5 + 1


@pytest.mark.parametrize(
    "factory",
    [house, single_edge_gadget, lambda: ell_house(3), lambda: chordal_gadget(2), lambda: sun_chordal_gadget(2),
     lambda: star_graph(3), lambda: unit_interval_gadget(4)],
)
def test_generators_are_deterministic(factory):
    a, b = factory(), factory()
    assert a.graph == b.graph
    assert a.graph.labels == b.graph.labels
    assert a.terminals == b.terminals and a.terminal_edges == b.terminal_edges


@pytest.mark.parametrize("bad", [lambda: ell_house(0), lambda: chordal_gadget(0), lambda: star_graph(0),
                                 lambda: unit_interval_chain(1, 2), lambda: gadget_tree(house(), 0),
                                 lambda: pigeonhole_chain_length(1)])
def test_generator_preconditions(bad):
    with pytest.raises(GraphError):
        bad()


@pytest.mark.parametrize("depth, n", [(1, 5), (2, 13), (3, 29), (4, 61)])
def test_gadget_tree_sizes(depth, n):
    H = gadget_tree(house(), depth)
    assert H.graph.n == n
    assert len(H.copies) == 2**depth - 1
    assert len(H.leaves) == 2**depth


def _owner(H):
    owner = {}
    for c in H.copies:
        for lv, hv in enumerate(c.vertex_map):
            if lv != H.gadget.root or c.parent is None:
                owner[hv] = c
    return owner


def _descends(H, c, anc):
    by_id = {x.copy_id: x for x in H.copies}
    while c is not None:
        if c.copy_id == anc.copy_id:
            return True
        c = by_id.get(c.parent)
    return False


@pytest.mark.parametrize("gd, depth", [(house(), 3), (chordal_gadget(1), 2), (ell_house(2), 3)])
def test_gadget_tree_separators(gd, depth):
    """Cutting a copy's root and terminals separates its interior, each child subtree and the rest."""
    H = gadget_tree(gd, depth)
    owner = _owner(H)
    by_id = {x.copy_id: x for x in H.copies}
    h = to_nx(H.graph)
    for c in H.copies:
        sep = {H.copy_root(c), *H.copy_terminals(c)}
        rest = h.copy()
        rest.remove_nodes_from(sep)

        def region(v):
            o = owner[v]
            if o.copy_id == c.copy_id:
                return "interior"
            if _descends(H, o, c):
                x = o
                while x.parent != c.copy_id:
                    x = by_id[x.parent]
                return ("below", x.parent_terminal)
            return "outside"

        for comp in nx.connected_components(rest):
            assert len({region(v) for v in comp}) == 1
