import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from spanner_forge.gadgets import chordal_gadget, ell_house, house, star_graph, sun_chordal_gadget
from spanner_forge.graph import Graph
from spanner_forge.recognizers import (
    chordal_ordering,
    find_hole,
    is_perfect_ordering,
    is_simple_ordering,
    is_weakly_chordal,
    simple_elimination_ordering,
)

from .strategies import connected_graphs
from .test_graph import cycle, to_nx

SUN3 = Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)])


def induced_cycle_oracle(g: Graph, min_len: int) -> bool:
    h = to_nx(g)
    for size in range(min_len, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            s = h.subgraph(sub)
            if all(d == 2 for _, d in s.degree()) and nx.is_connected(s):
                return True
    return False


def is_induced_cycle(g: Graph, cyc) -> bool:
    s = to_nx(g).subgraph(cyc)
    return len(cyc) == len(set(cyc)) and all(d == 2 for _, d in s.degree()) and nx.is_connected(s)


@given(connected_graphs(max_n=9))
@settings(max_examples=80, deadline=None)
def test_chordal_agrees_with_networkx(g):
    rec = chordal_ordering(g)
    assert rec.ok == nx.is_chordal(to_nx(g))
    if rec.ok:
        assert rec.ordering.replay(g)
    else:
        assert len(rec.witness) >= 4 and is_induced_cycle(g, rec.witness)


@given(connected_graphs(max_n=8, max_extra=12))
@settings(max_examples=60, deadline=None)
def test_weakly_chordal_matches_brute_force(g):
    rec = is_weakly_chordal(g)
    expected = not induced_cycle_oracle(g, 5) and not induced_cycle_oracle(g.complement(), 5)
    assert rec.ok == expected
    if not rec.ok:
        host = g if rec.witness_in == "graph" else g.complement()
        assert len(rec.witness) >= 5 and is_induced_cycle(host, rec.witness)


@given(connected_graphs(max_n=6, max_extra=10))
@settings(max_examples=50, deadline=None)
def test_simple_ordering_greedy_matches_permutation_search(g):
    exists = any(is_simple_ordering(g, p) for p in itertools.permutations(range(g.n)))
    rec = simple_elimination_ordering(g)
    assert rec.ok == exists
    if rec.ok:
        assert rec.ordering.replay(g)


def test_three_sun_is_chordal_but_not_strongly_chordal():
    assert chordal_ordering(SUN3).ok
    rec = simple_elimination_ordering(SUN3)
    assert not rec.ok
    assert rec.witness == tuple(range(6))


def test_c5_is_not_weakly_chordal():
    rec = is_weakly_chordal(cycle(5))
    assert not rec.ok
    assert sorted(rec.witness) == list(range(5))


def test_c4_is_weakly_chordal_but_not_chordal():
    assert is_weakly_chordal(cycle(4)).ok
    rec = chordal_ordering(cycle(4))
    assert not rec.ok and sorted(rec.witness) == [0, 1, 2, 3]


def test_orderings_reject_non_permutations():
    g = cycle(4)
    assert not is_perfect_ordering(g, [0, 1, 2])
    assert not is_simple_ordering(g, [0, 0, 1, 2])


def test_find_hole_none_on_trees():
    assert find_hole(Graph(4, [(0, 1), (1, 2), (1, 3)]), 3) is None


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_star_graphs_are_strongly_chordal(k):
    g = star_graph(k).graph
    rec = simple_elimination_ordering(g)
    assert rec.ok and rec.ordering.replay(g)
    assert nx.is_chordal(to_nx(g))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_chordal_gadgets_are_chordal(k):
    for gd in (chordal_gadget(k), sun_chordal_gadget(k)):
        rec = chordal_ordering(gd.graph)
        assert rec.ok and rec.ordering.replay(gd.graph)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_houses_are_weakly_chordal(ell):
    assert is_weakly_chordal(ell_house(ell).graph).ok
    assert not chordal_ordering(ell_house(ell).graph).ok


def test_house_is_weakly_chordal():
    assert is_weakly_chordal(house().graph).ok


def test_sun_gadget_is_not_strongly_chordal():
    assert not simple_elimination_ordering(sun_chordal_gadget(1).graph).ok
