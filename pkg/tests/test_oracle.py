from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gnp, graph_from_edges
from dyncolor.graph import DynamicGraph
from dyncolor.oracle import (
    ViolationKind,
    brute_force_palette,
    exact_chromatic_number,
    exact_coloring,
    greedy_delta_plus_one,
    verify_proper,
    verify_touched,
)

TRIANGLE = [(0, 1), (1, 2), (0, 2)]
PETERSEN = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)] + [
    (5 + i, 5 + (i + 2) % 5) for i in range(5)
]


def k(n):
    return graph_from_edges(n, itertools.combinations(range(n), 2))


def test_verify_proper_triangle():
    assert verify_proper(graph_from_edges(3, TRIANGLE), {0: 1, 1: 2, 2: 3}) == []


def test_verify_proper_monochromatic_edge():
    out = verify_proper(graph_from_edges(2, [(0, 1)]), {0: 1, 1: 1})
    assert len(out) == 1
    assert out[0].kind is ViolationKind.MONOCHROMATIC_EDGE
    assert out[0].witness == (0, 1, 1)


def test_verify_proper_path():
    assert verify_proper(graph_from_edges(3, [(0, 1), (1, 2)]), {0: 1, 1: 2, 2: 1}) == []


def test_verify_proper_missing_and_overflow():
    g = graph_from_edges(3, [(0, 1)])
    out = verify_proper(g, {0: 1, 1: 5}, palette=2)
    kinds = {v.kind for v in out}
    assert kinds == {ViolationKind.MISSING_COLOR, ViolationKind.PALETTE_OVERFLOW}


@given(st.integers(0, 5000), st.integers(1, 9), st.floats(0, 1))
def test_verify_proper_matches_definition(seed, n, p):
    import random

    rng = random.Random(seed)
    g = gnp(n, p, seed)
    chi = {v: rng.randint(1, 3) for v in g.adj}
    bad_edges = {(u, v) for u, v in g.edges() if chi[u] == chi[v]}
    out = verify_proper(g, chi)
    assert {v.witness[:2] for v in out} == bad_edges
    touched = verify_touched(g, chi, list(g.adj))
    assert {v.witness[:2] for v in touched} == bad_edges


def test_greedy_k4():
    assert greedy_delta_plus_one(k(4)) == {0: 1, 1: 2, 2: 3, 3: 4}


def test_greedy_star():
    g = graph_from_edges(6, [(0, i) for i in range(1, 6)])
    chi = greedy_delta_plus_one(g)
    assert len(set(chi.values())) == 2


@given(st.integers(0, 5000), st.integers(1, 25), st.floats(0, 1))
def test_greedy_within_delta_plus_one(seed, n, p):
    g = gnp(n, p, seed)
    chi = greedy_delta_plus_one(g)
    assert verify_proper(g, chi, g.delta + 1) == []


def test_exact_known_values():
    assert exact_chromatic_number(k(4)) == 4
    c5 = graph_from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert exact_chromatic_number(c5) == 3
    assert exact_chromatic_number(graph_from_edges(10, PETERSEN)) == 3
    assert exact_chromatic_number(DynamicGraph(3)) == 1
    assert exact_chromatic_number(DynamicGraph()) == 0


def test_exact_refuses_large_graphs():
    with pytest.raises(ValueError):
        exact_chromatic_number(DynamicGraph(17))


def _brute_chi(g):
    vs = sorted(g.adj)
    for kcol in range(1, len(vs) + 1):
        for combo in itertools.product(range(1, kcol + 1), repeat=len(vs)):
            chi = dict(zip(vs, combo))
            if all(chi[u] != chi[v] for u, v in g.edges()):
                return kcol
    return 0


@given(st.integers(0, 5000), st.integers(1, 7), st.floats(0, 1))
def test_exact_matches_enumeration(seed, n, p):
    g = gnp(n, p, seed)
    chi = exact_coloring(g)
    assert verify_proper(g, chi) == []
    assert exact_chromatic_number(g) == _brute_chi(g)


def test_brute_force_palette_table_example():
    # v=0 on level 5, up-neighbor 1 colored 2, down-neighbors 2,3,4 colored 3,3,4; palette 5
    g = graph_from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    chi = {0: 1, 1: 2, 2: 3, 3: 3, 4: 4}
    level = {0: 5, 1: 6, 2: 4, 3: 4, 4: 4}
    pv = brute_force_palette(g, chi, 0, level, 5)
    assert pv.up == {2}
    assert pv.multi_down == {3}
    assert pv.once_down == {4}
    assert pv.candidates == (1, 4, 5)
    assert pv.blank == {1, 5}


def test_brute_force_palette_isolated():
    g = DynamicGraph(1)
    pv = brute_force_palette(g, {0: 1}, 0, {0: 4}, 3)
    assert pv.blank == {1, 2, 3}
    assert pv.candidates == (1, 2, 3)


def test_brute_force_palette_clique_top_vertex():
    n = 5
    g = k(n)
    chi = {v: v + 1 for v in range(n)}
    level = {v: 4 + v for v in range(n)}
    top = n - 1
    pv = brute_force_palette(g, chi, top, level, g.delta + 1)
    assert len(pv.candidates) >= 1
    # multi-down is the palette minus blank, up and once-down
    full = set(range(1, g.delta + 2))
    assert pv.multi_down == full - pv.blank - pv.up - pv.once_down
