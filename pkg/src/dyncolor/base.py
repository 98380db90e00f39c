"""Colorer skeleton shared by every algorithm, plus the naive greedy colorer."""
from __future__ import annotations

import random

from .graph import Coloring, DynamicGraph, Kind, RecolorReport, UpdateEvent


class Colorer:
    """Owns a graph and a coloring and repairs the coloring after each update.

    Subclasses implement the ``on_*`` hooks; :meth:`update` validates the
    event, applies it to the graph and dispatches. Vertex insertions are
    factored into an isolated insertion followed by one edge insertion per
    neighbor, so the level colorers only ever see edge insertions.

    ``work`` counts machine-independent work units (one per palette element
    scanned and one per neighbor-structure touch).
    """

    name = "base"
    #: True when colors are drawn from {1..delta+1}.
    delta_palette = True

    def __init__(self, n0: int = 0, seed: int = 0, lazy_deletions: bool = False) -> None:
        self.graph = DynamicGraph(n0, lazy_deletions)
        self.coloring = Coloring()
        self.rng = random.Random(seed)
        self.seed = seed
        self.tau: dict[int, int] = {}
        self.clock = 0
        self.work = 0
        self.init_work = 0
        self._report = RecolorReport()

    # ---- public driver -------------------------------------------------

    def initialize(self) -> None:
        """Color the initial (isolated) vertices. Call once after construction."""
        w0 = self.work
        for v in sorted(self.graph.adj):
            self.on_vertex_insert(v)
        self.init_work = self.work - w0
        self.coloring.drain_changes()
        self._report = RecolorReport()

    def update(self, e: UpdateEvent) -> RecolorReport:
        g = self.graph
        g.validate(e)
        self.clock += 1
        report = self._report = RecolorReport()
        w0 = self.work
        kind = e.kind
        if kind is Kind.EDGE_INSERT:
            g.apply(e)
            self.on_edge_insert(e.u, e.v)
        elif kind is Kind.EDGE_DELETE:
            g.apply(e)
            if not g.lazy_deletions:
                self.on_edge_delete(e.u, e.v)
        elif kind is Kind.VERTEX_INSERT:
            g.apply(UpdateEvent.vertex_insert(e.u))
            self.on_vertex_insert(e.u)
            for w in e.nbrs:
                g.apply(UpdateEvent.edge_insert(e.u, w))
                self.on_edge_insert(e.u, w)
        else:
            self.on_vertex_delete(e.u)
            g.apply(e)
            self.coloring.remove(e.u)
            self.tau.pop(e.u, None)
        report.work = self.work - w0
        return report

    # ---- hooks ---------------------------------------------------------

    def on_vertex_insert(self, v: int) -> None:
        self.tau[v] = self.clock
        self.assign(v, self.rng.randint(1, self.graph.delta + 1))

    def on_vertex_delete(self, v: int) -> None:
        pass

    def on_edge_insert(self, u: int, v: int) -> None:
        raise NotImplementedError

    def on_edge_delete(self, u: int, v: int) -> None:
        pass

    # ---- helpers -------------------------------------------------------

    @property
    def palette_size(self) -> int:
        return self.graph.delta + 1

    def assign(self, v: int, c: int) -> None:
        """Record one recoloring of ``v``."""
        self.coloring.set(v, c)
        self.tau[v] = self.clock
        self._report.recolored.append(v)
        self.work += 1

    def more_recent(self, u: int, v: int) -> int:
        """Endpoint recolored most recently; ties go to the smaller id."""
        tu, tv = self.tau.get(u, -1), self.tau.get(v, -1)
        if tu != tv:
            return u if tu > tv else v
        return u if u < v else v

    def blank_colors(self, v: int) -> list[int]:
        chi = self.coloring.chi
        used = {chi[w] for w in self.graph.adj[v]}
        self.work += len(used) + self.palette_size
        return [c for c in range(1, self.palette_size + 1) if c not in used]

    def check_invariants(self) -> list[str]:
        return []


class GreedyColorer(Colorer):
    """The trivial O(Delta) colorer: give the more recent endpoint its smallest blank color."""

    name = "greedy"

    def on_vertex_insert(self, v: int) -> None:
        self.tau[v] = self.clock
        self.assign(v, self.smallest_blank(v))

    def on_edge_insert(self, u: int, v: int) -> None:
        chi = self.coloring.chi
        if chi[u] != chi[v]:
            return
        x = self.more_recent(u, v)
        self.assign(x, self.smallest_blank(x))
        self._report.chains.append(1)

    def smallest_blank(self, v: int) -> int:
        chi = self.coloring.chi
        nbrs = self.graph.adj[v]
        used = {chi[w] for w in nbrs if w in chi}
        self.work += len(nbrs)
        c = 1
        while c in used:
            c += 1
        self.work += c
        return c
