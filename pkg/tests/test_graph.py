from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_valid_events
from dyncolor.graph import (
    Coloring,
    DynamicGraph,
    InvalidUpdate,
    Kind,
    UpdateEvent,
    simulate_edge_insert_as_vertex_ops,
    verify_adjacency,
)


def test_single_edge_degrees():
    g = DynamicGraph(2)
    out = g.apply(UpdateEvent.edge_insert(0, 1))
    assert g.degree(0) == g.degree(1) == 1
    assert g.delta == 1
    assert out.may_corrupt


def test_deletion_cannot_corrupt():
    g = DynamicGraph(2)
    g.add_edge(0, 1)
    out = g.apply(UpdateEvent.edge_delete(0, 1))
    assert not out.may_corrupt
    assert not g.apply(UpdateEvent.vertex_delete(0)).may_corrupt


def test_triangle_delta_two():
    g = DynamicGraph(3)
    for u, v in [(0, 1), (1, 2), (0, 2)]:
        g.add_edge(u, v)
    assert g.delta == 2
    assert g.timestamp == 3


@pytest.mark.parametrize(
    "event",
    [
        UpdateEvent.edge_insert(0, 0),
        UpdateEvent.edge_insert(0, 9),
        UpdateEvent.edge_insert(0, 1),
        UpdateEvent.edge_delete(1, 2),
        UpdateEvent.vertex_insert(2),
        UpdateEvent.vertex_insert(5, [0, 0]),
        UpdateEvent.vertex_insert(5, [7]),
        UpdateEvent.vertex_delete(8),
    ],
)
def test_invalid_updates_leave_graph_unchanged(event):
    g = DynamicGraph(3)
    g.add_edge(0, 1)
    before = (sorted(g.edges()), g.delta, g.timestamp, g.n)
    with pytest.raises(InvalidUpdate):
        g.apply(event)
    assert (sorted(g.edges()), g.delta, g.timestamp, g.n) == before


def test_delta_is_running_maximum():
    g = DynamicGraph(4)
    for v in (1, 2, 3):
        g.add_edge(0, v)
    assert g.delta == 3
    g.remove_edge(0, 1)
    g.remove_vertex(0)
    assert g.max_degree() == 0
    assert g.delta == 3


def test_vertex_insert_links_neighbors():
    g = DynamicGraph(3)
    g.apply(UpdateEvent.vertex_insert(3, [0, 2]))
    assert g.neighbors(3) == {0, 2}
    assert 3 in g.neighbors(0)
    assert g.n_max == 4


def _apply_all(g, events):
    for e in events:
        g.apply(e)
    return g


def test_simulate_path_extension():
    g = DynamicGraph(3)
    g.add_edge(0, 1)
    ops = simulate_edge_insert_as_vertex_ops(g, 1, 2)
    assert ops == [UpdateEvent.vertex_delete(1), UpdateEvent.vertex_insert(1, [0, 2])]
    _apply_all(g, ops)
    assert sorted(g.edges()) == [(0, 1), (1, 2)]


def test_simulate_isolated_pair():
    g = DynamicGraph(2)
    assert simulate_edge_insert_as_vertex_ops(g, 0, 1) == [
        UpdateEvent.vertex_delete(0),
        UpdateEvent.vertex_insert(0, [1]),
    ]


def test_simulate_completes_triangle():
    g = DynamicGraph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    direct = g.copy()
    direct.add_edge(0, 2)
    _apply_all(g, simulate_edge_insert_as_vertex_ops(g, 0, 2))
    assert sorted(g.edges()) == sorted(direct.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_simulate_rejects_unknown_and_existing():
    g = DynamicGraph(2)
    g.add_edge(0, 1)
    with pytest.raises(InvalidUpdate):
        simulate_edge_insert_as_vertex_ops(g, 0, 5)
    with pytest.raises(InvalidUpdate):
        simulate_edge_insert_as_vertex_ops(g, 0, 1)


def test_verify_adjacency_fresh_and_corrupted():
    assert verify_adjacency(DynamicGraph())
    g = DynamicGraph(3)
    g.add_edge(0, 1)
    assert verify_adjacency(g)
    g.adj[1].discard(0)
    assert not verify_adjacency(g)
    h = DynamicGraph(2)
    h.adj[0].add(0)
    assert not verify_adjacency(h)


def test_verify_adjacency_after_long_fuzz():
    g = DynamicGraph(60)
    for e in random_valid_events(60, 10_000, seed=11):
        g.apply(e)
    assert verify_adjacency(g)


@given(st.integers(0, 10_000), st.integers(2, 12))
def test_delta_equals_max_over_prefixes(seed, n):
    g = DynamicGraph(n)
    best = 0
    for e in random_valid_events(n, 40, seed):
        g.apply(e)
        best = max(best, g.max_degree())
        assert g.delta == best
    assert verify_adjacency(g)


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=40), st.randoms())
def test_insert_only_final_state_is_order_insensitive(pairs, rnd):
    edges = sorted({(min(u, v), max(u, v)) for u, v in pairs if u != v})
    a = DynamicGraph(10)
    for u, v in edges:
        a.add_edge(u, v)
    shuffled = list(edges)
    rnd.shuffle(shuffled)
    b = DynamicGraph(10)
    for u, v in shuffled:
        b.add_edge(v, u)
    assert sorted(a.edges()) == sorted(b.edges())


def test_lazy_deletions_keep_adjacency_until_endpoint_leaves():
    g = DynamicGraph(3, lazy_deletions=True)
    g.add_edge(0, 1)
    g.remove_edge(0, 1)
    assert not g.has_edge(0, 1)
    assert 1 in g.adj[0]
    assert g.edge_count() == 0
    g.add_edge(0, 1)
    assert g.has_edge(0, 1)
    g.remove_edge(0, 1)
    g.remove_vertex(0)
    assert 0 not in g.adj[1]
    assert verify_adjacency(g)


def test_event_lines():
    assert UpdateEvent.edge_insert(3, 4).to_line() == "+e 3 4"
    assert UpdateEvent.edge_delete(3, 4).to_line() == "-e 3 4"
    assert UpdateEvent.vertex_insert(5, [1, 2]).to_line() == "+v 5 1 2"
    assert UpdateEvent.vertex_delete(5).to_line() == "-v 5"
    assert Kind("+e") is Kind.EDGE_INSERT


def test_coloring_load_index():
    col = Coloring()
    col.set(0, 1)
    col.set(1, 1)
    col.set(2, 2)
    assert col.load(1) == 2 and col.max_load() == 2
    col.set(1, 3)
    col.remove(0)
    assert col.loads() == col.recount()
    assert col.load_consistent()
    assert col.colors_used() == 2
    assert col.is_free_at(1, {1, 2})
    assert not col.is_free_at(2, {2})
