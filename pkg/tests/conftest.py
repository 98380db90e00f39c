from __future__ import annotations

import random

from hypothesis import HealthCheck, settings

from dyncolor.graph import DynamicGraph, UpdateEvent

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def graph_from_edges(n: int, edges) -> DynamicGraph:
    g = DynamicGraph(n)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def gnp(n: int, p: float, seed: int) -> DynamicGraph:
    rng = random.Random(seed)
    g = DynamicGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def edge_events(edges) -> list[UpdateEvent]:
    return [UpdateEvent.edge_insert(u, v) for u, v in edges]


def random_valid_events(n: int, t: int, seed: int, p_delete: float = 0.3) -> list[UpdateEvent]:
    """A fully dynamic edge stream on ``n`` vertices, valid against its own prefix."""
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    out = []
    while len(out) < t:
        if edges and rng.random() < p_delete:
            p = rng.choice(sorted(edges))
            edges.discard(p)
            out.append(UpdateEvent.edge_delete(*p))
            continue
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        p = (min(u, v), max(u, v))
        if p in edges:
            continue
        edges.add(p)
        out.append(UpdateEvent.edge_insert(*p))
    return out


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
