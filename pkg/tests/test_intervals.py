import pytest
from hypothesis import given, settings

from spanner_forge.graph import GraphError, all_pairs_distances, is_spanning_subgraph
from spanner_forge.intervals import (
    IntervalModel,
    graph_from_interval_model,
    interval_one_spanner,
    is_unit_model,
    unit_chain_model,
)
from spanner_forge.verify import SPANS, is_additive_spanner

from .strategies import connected_interval_models


def check_spanner(model):
    g = graph_from_interval_model(model)
    h = interval_one_spanner(model)
    diameter = int(all_pairs_distances(g).max())
    assert is_spanning_subgraph(h, g)
    assert h.m <= max(2 * g.n - diameter - 2, 0)
    cert = is_additive_spanner(g, h, 1)
    assert cert.verdict == SPANS
    return g, h, diameter


@given(connected_interval_models())
@settings(max_examples=150, deadline=None)
def test_interval_spanner_bound_and_surplus(model):
    check_spanner(model)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_unit_chain_spanners(k, m):
    model = unit_chain_model(k, m)
    assert is_unit_model(model)
    check_spanner(model)


def test_intersection_graph_uses_closed_intervals():
    g = graph_from_interval_model(IntervalModel.of([(0, 1), (1, 2), (3, 4)]))
    assert g.edges == ((0, 1),)


def test_reversed_interval_rejected():
    with pytest.raises(GraphError):
        IntervalModel.of([(2, 1)])


def test_disconnected_model_rejected():
    with pytest.raises(GraphError):
        interval_one_spanner(IntervalModel.of([(0, 1), (2, 3)]))


def test_clique_model_within_bound():
    model = IntervalModel.of([(0, 5)] * 6)
    g, h, diameter = check_spanner(model)
    assert diameter == 1 and h.m <= 2 * g.n - 3
