import json

import pytest
from hypothesis import given, settings

from spanner_forge.gadgets import chordal_gadget, house, star_graph, sun_chordal_gadget
from spanner_forge.graph import GraphError, TreeSystem, bfs_tree
from spanner_forge.serialize import (
    dumps,
    gadget_from_dict,
    gadget_to_dict,
    graph_from_dict,
    graph_to_dict,
    to_dot,
    trees_from_dict,
    trees_to_dict,
)

from .strategies import connected_graphs


@given(connected_graphs(max_n=10))
@settings(max_examples=60, deadline=None)
def test_graph_round_trip(g):
    text = dumps(graph_to_dict(g))
    again = graph_from_dict(json.loads(text))
    assert again == g
    assert dumps(graph_to_dict(again)) == text


@pytest.mark.parametrize("gd", [house(), chordal_gadget(2), sun_chordal_gadget(1), star_graph(2)], ids=lambda g: g.name)
def test_gadget_round_trip(gd):
    again = gadget_from_dict(json.loads(dumps(gadget_to_dict(gd))))
    assert again.graph == gd.graph
    assert (again.root, again.terminals, again.terminal_edges, again.name) == (
        gd.root,
        gd.terminals,
        gd.terminal_edges,
        gd.name,
    )


def test_tree_system_round_trip():
    g = chordal_gadget(1).graph
    ts = TreeSystem(g, [bfs_tree(g, 0), bfs_tree(g, 3)])
    again = trees_from_dict(g, json.loads(dumps(trees_to_dict(ts))))
    assert [t.edges for t in again.trees] == [t.edges for t in ts.trees]


def test_malformed_graph_json():
    with pytest.raises(GraphError):
        graph_from_dict({"schema": "spanner-forge/1", "n": 2})
    with pytest.raises(GraphError):
        graph_from_dict({"schema": "elsewhere/9", "n": 1, "edges": []})
    with pytest.raises(GraphError):
        gadget_from_dict(graph_to_dict(house().graph))


def test_house_dot():
    text = to_dot(house().graph, house(), name="house")
    assert text.startswith('graph "house" {')
    assert "0 [label=\"r\", shape=doublecircle];" in text
    assert text.count("shape=box") == 2
    assert text.count(" -- ") == 6


def test_star_dot_marks_terminal_edges():
    gd = star_graph(1)
    assert to_dot(gd.graph, gd).count("style=bold") == len(gd.terminal_edges)
