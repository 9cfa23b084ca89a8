import itertools
import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spanner_forge.gadgets import (
    chordal_gadget,
    ell_house,
    gadget_tree,
    house,
    star_graph,
    sun_chordal_gadget,
    unit_interval_gadget,
)
from spanner_forge.graph import (
    Graph,
    GraphError,
    SpanningTree,
    TreeSystem,
    all_pairs_distances,
    bfs_tree,
    enumerate_spanning_trees,
)
from spanner_forge.lowerbound import enumerate_fc_trees
from spanner_forge.verify import (
    FAILS,
    SPANS,
    Certificate,
    count_jogs,
    deficiency,
    is_additive_spanner,
    is_fc_tree,
    surplus,
    terminal_edge_span_class,
    verify_collective_spanner,
)

from .strategies import connected_graphs, graphs_with_tree
from .test_graph import cycle, to_nx


def random_tree(g: Graph, rnd) -> SpanningTree:
    order = list(g.edges)
    rnd.shuffle(order)
    comp = list(range(g.n))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    out = []
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            comp[ru] = rv
            out.append((u, v))
    return SpanningTree(g, out)


def brute_first_failure(g, trees, c):
    d = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for u, v in itertools.combinations(range(g.n), 2):
        if min(t.distance(u, v) for t in trees) - d[u][v] > c:
            return (u, v)
    return None


@given(connected_graphs(min_n=2, max_n=9), st.randoms(use_true_random=False), st.integers(1, 3), st.integers(0, 3))
@settings(max_examples=80, deadline=None)
def test_verify_matches_brute_force(g, rnd, mu, c):
    trees = [random_tree(g, rnd) for _ in range(mu)]
    cert = verify_collective_spanner(g, TreeSystem(g, trees), c)
    first = brute_first_failure(g, trees, c)
    if first is None:
        assert cert.verdict == SPANS and cert.witness is None
    else:
        assert cert.verdict == FAILS and cert.witness == first
        assert all(s > c for s in cert.per_tree_surplus)


@given(connected_graphs(min_n=2, max_n=9), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_surplus_monotone_in_the_system(g, rnd):
    trees = [random_tree(g, rnd) for _ in range(3)]
    for u, v in itertools.combinations(range(g.n), 2):
        values = [surplus(g, TreeSystem(g, trees[:i]), u, v) for i in range(1, 4)]
        assert values == sorted(values, reverse=True)


@given(graphs_with_tree(max_n=9))
@settings(max_examples=60, deadline=None)
def test_deficiency_zero_iff_edge_in_spanner(gt):
    g, edges = gt
    t = SpanningTree(g, edges)
    for e in g.edges:
        assert (deficiency(g, t, e) == 0) == t.has_edge(*e)
        assert (deficiency(g, t.as_graph(), e) == 0) == t.has_edge(*e)


def test_deficiency_rejects_non_edges():
    g = cycle(4)
    with pytest.raises(GraphError):
        deficiency(g, g, (0, 2))


@given(connected_graphs(min_n=2, max_n=8, max_extra=6), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_additive_spanner_matches_networkx(g, rnd):
    keep = [e for e in g.edges if rnd.random() < 0.7]
    h = Graph(g.n, set(keep) | random_tree(g, rnd).edges)
    dg = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    dh = dict(nx.all_pairs_shortest_path_length(to_nx(h)))
    worst = max(dh[u][v] - dg[u][v] for u in range(g.n) for v in range(g.n))
    for c in range(4):
        assert (is_additive_spanner(g, h, c).verdict == SPANS) == (worst <= c)


GADGETS = [
    house(),
    ell_house(2),
    ell_house(3),
    chordal_gadget(1),
    chordal_gadget(2),
    chordal_gadget(3),
    sun_chordal_gadget(1),
    sun_chordal_gadget(2),
    sun_chordal_gadget(3),
    star_graph(1),
    star_graph(2),
    star_graph(3),
    unit_interval_gadget(4),
]


@pytest.mark.parametrize("g", [gd.graph for gd in GADGETS] + [gadget_tree(house(), 3).graph], ids=repr)
def test_bfs_trees_from_all_but_one_vertex_span_exactly(g):
    assert g.n <= 40
    trees = [bfs_tree(g, v) for v in range(1, g.n)]
    cert = verify_collective_spanner(g, TreeSystem(g, trees), 0)
    assert cert.verdict == SPANS


def test_single_bfs_tree_of_a_cycle_fails():
    g = cycle(6)
    cert = verify_collective_spanner(g, TreeSystem(g, [bfs_tree(g, 0)]), 0)
    assert cert.verdict == FAILS
    # tree path 2-1-0-5-4 has length 4 against graph distance 2
    assert cert.witness == (2, 4)


@pytest.mark.parametrize("gd", GADGETS[:10], ids=lambda gd: gd.name)
def test_fc_check_matches_root_distances(gd):
    dist = all_pairs_distances(gd.graph)
    for t in itertools.islice(enumerate_spanning_trees(gd.graph), 400):
        expected = all(t.distance(gd.root, x) == dist[gd.root, x] for x in gd.terminals)
        assert bool(is_fc_tree(gd, t)) == expected


@pytest.mark.parametrize("k", [1, 2])
def test_terminal_edges_are_spanned_at_plus_one_or_plus_three(k):
    gd = star_graph(k)
    seen = set()
    for t in enumerate_fc_trees(gd):
        for e in gd.terminal_edges:
            cls = terminal_edge_span_class(gd, t, e)
            seen.add(cls)
            shared = t.parents(gd.root)[e[0]] == t.parents(gd.root)[e[1]]
            assert cls == (1 if shared else 3)
    assert seen == {1, 3}


def test_span_class_needs_an_fc_tree():
    gd = star_graph(1)
    bad = next(t for t in enumerate_spanning_trees(gd.graph) if not is_fc_tree(gd, t))
    with pytest.raises(GraphError):
        terminal_edge_span_class(gd, bad, gd.terminal_edges[0])


def _fc_gadget_tree(H, picks):
    local = list(enumerate_fc_trees(H.gadget))
    edges = []
    for copy, i in zip(H.copies, picks):
        edges += [(copy.vertex_map[a], copy.vertex_map[b]) for a, b in local[i % len(local)].edges]
    return SpanningTree(H.graph, edges)


def _ancestor_roots(H, leaf):
    by_id = {c.copy_id: c for c in H.copies}
    copy = next(c for c in H.copies if leaf in c.vertex_map and c.vertex_map.index(leaf) != H.gadget.root)
    out = []
    while copy is not None:
        out.append(H.copy_root(copy))
        copy = by_id.get(copy.parent)
    return out


@pytest.mark.parametrize("gd, depth", [(house(), 3), (chordal_gadget(1), 2), (ell_house(2), 2)])
def test_fc_gadget_trees_have_no_jogs(gd, depth):
    H = gadget_tree(gd, depth)
    for seed in range(5):
        t = _fc_gadget_tree(H, [seed * 7 + i for i in range(len(H.copies))])
        assert is_fc_tree(H, t)
        for leaf in H.leaves:
            for anc in _ancestor_roots(H, leaf):
                assert count_jogs(H, t, leaf, anc) == 0


def _jogs_oracle(H, t, leaf, anc):
    """Walk up copy by copy, comparing tree and host distances with networkx."""
    h = to_nx(H.graph)
    by_id = {c.copy_id: c for c in H.copies}
    copy = next(c for c in H.copies if leaf in c.vertex_map and c.vertex_map.index(leaf) != H.gadget.root)
    jogs, exit_v = 0, leaf
    while True:
        root = H.copy_root(copy)
        jogs += t.distance(root, exit_v) > nx.shortest_path_length(h, root, exit_v)
        if root == anc:
            return jogs
        exit_v, copy = root, by_id[copy.parent]


@given(st.randoms(use_true_random=False))
@settings(max_examples=30, deadline=None)
def test_jog_count_matches_oracle_on_random_trees(rnd):
    H = gadget_tree(house(), 3)
    t = random_tree(H.graph, rnd)
    for leaf in H.leaves:
        for anc in _ancestor_roots(H, leaf):
            assert count_jogs(H, t, leaf, anc) == _jogs_oracle(H, t, leaf, anc)


def test_known_jog():
    H = gadget_tree(house(), 2)
    # the top copy reaches t2 only through t1, a detour of 2
    r, one, two, t1, t2 = 0, 1, 2, 3, 4
    local = [(r, one), (one, two), (one, t1), (t1, t2)]
    edges = list(local)
    for copy in H.copies[1:]:
        vm = copy.vertex_map
        edges += [(vm[a], vm[b]) for a, b in [(0, 1), (0, 2), (1, 3), (2, 4)]]
    t = SpanningTree(H.graph, edges)
    assert not is_fc_tree(H, t)
    child_of_t2 = next(c for c in H.copies if c.parent_terminal == t2)
    leaf = child_of_t2.vertex_map[3]
    assert count_jogs(H, t, leaf, t2) == 0
    assert count_jogs(H, t, leaf, r) == 1


def test_count_jogs_rejects_non_ancestor():
    H = gadget_tree(house(), 2)
    t = _fc_gadget_tree(H, [0, 0, 0])
    leaf = H.leaves[0]
    with pytest.raises(GraphError):
        count_jogs(H, t, leaf, H.leaves[-1])


def test_certificate_json_round_trip():
    g = cycle(6)
    cert = verify_collective_spanner(g, TreeSystem(g, [bfs_tree(g, 0)]), 0)
    text = cert.to_json()
    again = Certificate.from_dict(json.loads(text))
    assert again.to_json() == text
    assert json.loads(text)["schema"] == "spanner-forge/1"
    with pytest.raises(ValueError):
        Certificate.from_dict({"schema": "other"})
