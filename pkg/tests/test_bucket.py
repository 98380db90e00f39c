from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_valid_events
from dyncolor.bucket import (
    A1Colorer,
    A2Colorer,
    bucket_capacity,
    capacity_sum,
    exact_static,
    greedy_static,
    sub_bucket_count,
)
from dyncolor.graph import UpdateEvent
from dyncolor.oracle import exact_chromatic_number, verify_proper
from dyncolor.streams import gen_vertex_stream


def test_capacity_examples():
    assert bucket_capacity(1, 2, 16) == 3
    assert bucket_capacity(2, 2, 16) == 12
    for n_r in (2, 7, 100, 1000):
        assert bucket_capacity(1, 1, n_r) == n_r - 1


@pytest.mark.parametrize("args", [(0, 2, 16), (3, 2, 16), (1, 2, 1), (1, 0, 16)])
def test_capacity_rejects_bad_input(args):
    with pytest.raises(ValueError):
        bucket_capacity(*args)


@given(st.integers(1, 5), st.integers(2, 10**6))
def test_capacity_sum_identity(d, n_r):
    root = n_r ** (1 / d)
    if abs(root - 1) > 1e-9:
        assert math.isclose(capacity_sum(d, n_r), (n_r - 1) / (root - 1), rel_tol=1e-9)
    hs = [bucket_capacity(i, d, n_r) for i in range(1, d + 1)]
    assert all(h >= 1 for h in hs)
    assert sum(hs) <= max(n_r - 1, d)


def test_sub_bucket_count():
    assert sub_bucket_count(2, 16) == 4
    assert sub_bucket_count(2, 17) == 5
    assert sub_bucket_count(3, 8) == 2


def insert_vertices(c, k, start=0):
    reports = []
    for v in range(start, start + k):
        reports.append(c.update(UpdateEvent.vertex_insert(v)))
    return reports


def a1(n_r=16, d=2, **kw):
    c = A1Colorer(0, 0, d=d, n_r=n_r, **kw)
    c.initialize()
    return c


def a2(n_r=16, d=2, **kw):
    c = A2Colorer(0, 0, d=d, n_r=n_r, **kw)
    c.initialize()
    return c


def test_a1_first_insertion():
    c = a1()
    (rep,) = insert_vertices(c, 1)
    assert len(rep) == 1
    assert c.bucket_of[0] == 0


def test_a1_overflow_moves_first_bucket():
    c = a1()
    reps = insert_vertices(c, 4)
    assert [len(r) for r in reps] == [1, 1, 1, 4]
    assert c.bucket_sizes() == [0, 4]


def test_a1_saturated_hierarchy_resets():
    c = a1()
    reps = insert_vertices(c, 15)
    assert c.bucket_sizes() == [3, 12]
    assert c.resets == 0
    (rep,) = insert_vertices(c, 1, start=15)
    assert c.resets == 1
    assert len(rep) == c.graph.n == 16


def test_a1_full_reset_of_sixteen():
    c = a1()
    insert_vertices(c, 16)
    c.full_reset()
    assert len(c._report.recolored) >= 16
    assert c.check_invariants() == []
    assert verify_proper(c.graph, c.coloring.chi) == []


def test_single_vertex_reset():
    c = A1Colorer(1, 0, d=2)
    c.initialize()
    c._report.recolored.clear()
    c.full_reset()
    assert c._report.recolored == [0]


def test_a2_first_insertion_and_cascade():
    c = a2()
    (rep,) = insert_vertices(c, 1)
    assert len(rep) == 1
    assert c.sub_of[0] == (0, 0)
    h1 = c.h[0]
    reps = insert_vertices(c, h1, start=1)
    assert c.cascades >= 1
    assert max(len(r) for r in reps) <= h1 + 1


def test_a2_keeps_reset_bucket_and_left_packs():
    c = a2(n_r=64)
    for rep in insert_vertices(c, 200):
        assert len(rep) >= 1
        assert c.invariant_violations() == []
    assert verify_proper(c.graph, c.coloring.chi) == []


def test_resets_need_capacity_sum_insertions_between():
    for cls in (A1Colorer, A2Colorer):
        c = cls(0, 0, d=2, n_r=16)
        c.initialize()
        insert_vertices(c, 600)
        log = c.reset_log
        assert len(log) >= 3
        for (ins_a, n_a, n_r_a), (ins_b, _, _) in zip(log, log[1:]):
            # after a reset V_1 is empty, so the next one needs at least a full V_1 cascade
            assert ins_b - ins_a >= bucket_capacity(1, 2, n_r_a) + 1
            if cls is A1Colorer:
                # and in A1 the spare room of V_d must be overrun as well
                assert ins_b - ins_a >= bucket_capacity(2, 2, n_r_a) - n_a + 1


@pytest.mark.parametrize("cls", [A1Colorer, A2Colorer])
def test_saturating_sequence_moves_each_vertex_once_per_level(cls):
    n = 2000
    s = gen_vertex_stream(n, 3, seed=1)
    c = cls(0, 1, d=2)
    c.initialize()
    total = 0
    for e in s.events:
        total += len(c.update(e))
    assert verify_proper(c.graph, c.coloring.chi) == []
    if cls is A2Colorer:
        assert total <= 4 * c.d * n


@given(st.integers(0, 10_000), st.sampled_from([A1Colorer, A2Colorer]), st.integers(1, 3))
def test_bucket_colorers_stay_proper_on_mixed_streams(seed, cls, d):
    n = 20
    c = cls(n, seed, d=d)
    c.initialize()
    events = random_valid_events(n, 120, seed, p_delete=0.2)
    events.append(UpdateEvent.vertex_delete(3))
    events.append(UpdateEvent.vertex_insert(n, [0, 1, 2]))
    for e in events:
        c.update(e)
        assert verify_proper(c.graph, c.coloring.chi) == []
        assert c.check_invariants() == []
        if cls is A2Colorer:
            assert c.invariant_violations() == []


def test_colors_used_bound():
    s = gen_vertex_stream(300, 3, seed=2)
    for cls in (A1Colorer, A2Colorer):
        c = cls(0, 2, d=2)
        c.initialize()
        for e in s.events:
            c.update(e)
        k_static = c.graph.delta + 1
        if cls is A1Colorer:
            assert c.coloring.colors_used() <= c.d * k_static
        else:
            assert c.coloring.colors_used() <= c.d * sub_bucket_count(c.d, c.n_r) * k_static


def test_static_colorers():
    adj = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}, 3: set()}
    assert greedy_static([0, 1, 2, 3], adj) == {0: 1, 1: 2, 2: 3, 3: 1}
    out = exact_static([0, 1, 2, 3], adj)
    assert sorted(out.values())[-1] == 3


def test_exact_static_buckets_are_optimal_and_proper():
    c = A1Colorer(10, 0, d=1, static="exact")
    c.initialize()
    for u, v in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]:
        c.update(UpdateEvent.edge_insert(u, v))
    assert verify_proper(c.graph, c.coloring.chi) == []
    assert c.coloring.colors_used() >= exact_chromatic_number(c.graph)


def test_palette_cap_forces_cascade():
    c = a1(n_r=64, palette_cap=1)
    c.update(UpdateEvent.vertex_insert(0))
    c.update(UpdateEvent.vertex_insert(1, [0]))
    assert c.cascades == 1
    assert verify_proper(c.graph, c.coloring.chi) == []
