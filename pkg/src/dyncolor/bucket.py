"""Bucket colorers trading recolorings against colors used.

Vertices are split into first-level buckets ``V_1..V_d``; bucket ``i`` holds
at most ``h_i = N_R**(i/d) - N_R**((i-1)/d)`` vertices, where ``N_R`` is the
order fixed at the last reset. Each bucket (``a1``) or each sub-bucket
(``a2``) is colored with its own block of colors, so colors of different
blocks never clash and only edges inside a block need care.

A new vertex enters ``V_1``. When a bucket would overflow, its whole
content moves up together with the arriving vertices; past ``V_d`` the
whole graph is reset. ``a1`` rebuilds the coloring of the receiving
bucket, so every vertex in it counts as recolored. ``a2`` drops the moving
vertices into an empty sub-bucket of the receiving bucket and recolors
only them; it keeps one sub-bucket per bucket empty for that purpose.

Edge insertions are handled as "remove an endpoint, insert it back with
the new neighbor".
"""
from __future__ import annotations

import math
from collections.abc import Callable, Iterable

from .base import Colorer
from .graph import DynamicGraph, Kind, RecolorReport, UpdateEvent
from .oracle import exact_coloring

_EPS = 1e-9
EXACT_LIMIT = 12


def _root_power(n_r: int, num: int, d: int) -> float:
    """``n_r ** (num/d)``, snapped to the nearest integer when it is one up to rounding."""
    x = n_r ** (num / d)
    r = round(x)
    if abs(x - r) <= _EPS * max(1.0, x):
        return float(r)
    return x


def bucket_capacity(i: int, d: int, n_r: int) -> int:
    """High point ``h_i``: floor of the real value, at least 1."""
    if d < 1 or not 1 <= i <= d:
        raise ValueError(f"bucket index {i} outside 1..{d}")
    if n_r < 2:
        raise ValueError(f"N_R must be >= 2, got {n_r}")
    h = _root_power(n_r, i, d) - _root_power(n_r, i - 1, d)
    return max(1, math.floor(h + _EPS))


def sub_bucket_capacity(i: int, d: int, n_r: int) -> int:
    return max(1, math.floor(_root_power(n_r, i - 1, d) + _EPS))


def sub_bucket_count(d: int, n_r: int) -> int:
    """Sub-buckets per first-level bucket, the empty reset bucket included."""
    return max(2, math.ceil(_root_power(n_r, 1, d) - _EPS))


def capacity_sum(d: int, n_r: int) -> float:
    """Real-valued sum of ``N_R**((i-1)/d)`` over ``i = 1..d``."""
    return sum(_root_power(n_r, i - 1, d) for i in range(1, d + 1))


StaticColorer = Callable[[list[int], dict[int, set[int]]], dict[int, int]]


def greedy_static(vs: list[int], adj: dict[int, set[int]]) -> dict[int, int]:
    """Ascending-id greedy on the subgraph induced by ``vs``; colors start at 1."""
    out: dict[int, int] = {}
    for v in sorted(vs):
        used = {out[w] for w in adj[v] if w in out}
        c = 1
        while c in used:
            c += 1
        out[v] = c
    return out


def exact_static(vs: list[int], adj: dict[int, set[int]]) -> dict[int, int]:
    """Optimal coloring for at most ``EXACT_LIMIT`` vertices, greedy beyond."""
    if len(vs) > EXACT_LIMIT:
        return greedy_static(vs, adj)
    inside = set(vs)
    g = DynamicGraph()
    for v in vs:
        g.adj[v] = {w for w in adj[v] if w in inside}
    return exact_coloring(g)


class BucketColorer(Colorer):
    """Shared machinery; see :class:`A1Colorer` and :class:`A2Colorer`."""

    delta_palette = False
    variant = ""

    def __init__(
        self,
        n0: int = 0,
        seed: int = 0,
        d: int = 2,
        n_r: int | None = None,
        static: str | StaticColorer = "greedy",
        palette_cap: int | None = None,
    ) -> None:
        if d < 1:
            raise ValueError(f"d must be >= 1, got {d}")
        super().__init__(n0, seed)
        self.d = d
        self.n_r = n_r if n_r is not None else 2 * max(n0, 1)
        if self.n_r < 2:
            raise ValueError(f"N_R must be >= 2, got {self.n_r}")
        if static == "greedy":
            self.static: StaticColorer = greedy_static
        elif static == "exact":
            self.static = exact_static
        elif callable(static):
            self.static = static
        else:
            raise ValueError(f"unknown static colorer {static!r}")
        self.palette_cap = palette_cap
        self.local: dict[int, int] = {}
        self.resets = 0
        self.cascades = 0
        self.insertions = 0
        # insertion counts at which each reset happened
        self.reset_log: list[tuple[int, int, int]] = []
        self.moves_per_level = [0] * d
        self._rebuild_capacities()

    def _rebuild_capacities(self) -> None:
        self.h = [bucket_capacity(i, self.d, self.n_r) for i in range(1, self.d + 1)]

    # ---- driver --------------------------------------------------------

    def initialize(self) -> None:
        w0 = self.work
        if self.graph.n:
            self.full_reset(initial=True)
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
            self.detach(e.u)
            self.insert_vertex(e.u)
        elif kind is Kind.EDGE_DELETE:
            g.apply(e)
        elif kind is Kind.VERTEX_INSERT:
            g.apply(e)
            self.insert_vertex(e.u)
        else:
            self.detach(e.u)
            g.apply(e)
            self.coloring.remove(e.u)
            self.local.pop(e.u, None)
            self.tau.pop(e.u, None)
        report.work = self.work - w0
        return report

    def on_edge_insert(self, u: int, v: int) -> None:  # pragma: no cover - routed in update
        raise AssertionError("bucket colorers route edge insertions through vertex ops")

    # ---- subclass interface -------------------------------------------

    def detach(self, v: int) -> None:
        raise NotImplementedError

    def insert_vertex(self, v: int) -> None:
        raise NotImplementedError

    def full_reset(self, initial: bool = False) -> None:
        raise NotImplementedError

    def bucket_sizes(self) -> list[int]:
        raise NotImplementedError

    # ---- helpers -------------------------------------------------------

    def _static_color(self, vs: Iterable[int]) -> dict[int, int]:
        vs = sorted(vs)
        adj = self.graph.adj
        self.work += len(vs) + sum(len(adj[v]) for v in vs)
        return self.static(vs, adj)

    def _note_reset(self) -> None:
        self.resets += 1
        self.reset_log.append((self.insertions, self.graph.n, self.n_r))

    def check_invariants(self) -> list[str]:
        out = []
        for i, (size, cap) in enumerate(zip(self.bucket_sizes(), self.h), start=1):
            if size > cap:
                out.append(f"bucket {i}: {size} vertices above high point {cap}")
        return out


class A1Colorer(BucketColorer):
    """One-level partition: each bucket gets one color block and is rebuilt on arrival."""

    name = "a1"
    variant = "a1"

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.buckets: list[set[int]] = [set() for _ in range(self.d)]
        self.bucket_of: dict[int, int] = {}

    def global_color(self, i: int, local: int) -> int:
        """Color ``local`` of bucket ``i`` (0-based) in the shared palette."""
        return (local - 1) * self.d + i + 1

    def bucket_sizes(self) -> list[int]:
        return [len(b) for b in self.buckets]

    def detach(self, v: int) -> None:
        i = self.bucket_of.pop(v, None)
        if i is not None:
            self.buckets[i].discard(v)

    def _place(self, i: int, v: int, local: int) -> None:
        self.buckets[i].add(v)
        self.bucket_of[v] = i
        self.local[v] = local
        self.tau[v] = self.clock
        self.assign(v, self.global_color(i, local))

    def _first_local(self, v: int, i: int) -> int:
        bucket_of, local = self.bucket_of, self.local
        nbrs = self.graph.adj[v]
        used = {local[w] for w in nbrs if bucket_of.get(w) == i}
        self.work += len(nbrs)
        c = 1
        while c in used:
            c += 1
        self.work += c
        return c

    def insert_vertex(self, v: int) -> None:
        self.insertions += 1
        if len(self.buckets[0]) + 1 <= self.h[0]:
            c = self._first_local(v, 0)
            if self.palette_cap is None or c <= self.palette_cap:
                self._place(0, v, c)
                return
        moving = set(self.buckets[0])
        moving.add(v)
        self.buckets[0].clear()
        for w in moving:
            self.bucket_of.pop(w, None)
        self.cascades += 1
        for i in range(1, self.d):
            target = self.buckets[i]
            if len(target) + len(moving) <= self.h[i]:
                members = target | moving
                self.moves_per_level[i] += len(moving)
                cols = self._static_color(members)
                for w in sorted(members):
                    self._place(i, w, cols[w])
                return
            moving |= target
            for w in target:
                self.bucket_of.pop(w, None)
            target.clear()
        for w in moving:
            self.bucket_of.pop(w, None)
        self.full_reset()

    def full_reset(self, initial: bool = False) -> None:
        """Set N_R to twice the order and rebuild everything inside ``V_d``."""
        n = self.graph.n
        if not initial:
            self.n_r = max(2, 2 * n)
            self._note_reset()
        while True:
            self._rebuild_capacities()
            if n <= self.h[-1]:
                break
            self.n_r *= 2
        for b in self.buckets:
            b.clear()
        self.bucket_of.clear()
        vs = sorted(self.graph.adj)
        cols = self._static_color(vs)
        for v in vs:
            self._place(self.d - 1, v, cols[v])


class A2Colorer(BucketColorer):
    """Two-level partition: sub-buckets get their own color blocks; movers only are recolored."""

    name = "a2"
    variant = "a2"

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.sub_of: dict[int, tuple[int, int]] = {}
        self._rebuild_subs()

    def _rebuild_subs(self) -> None:
        self.m = sub_bucket_count(self.d, self.n_r)
        self.sub_cap = [sub_bucket_capacity(i, self.d, self.n_r) for i in range(1, self.d + 1)]
        self.subs: list[list[set[int]]] = [[set() for _ in range(self.m)] for _ in range(self.d)]
        self.sizes = [0] * self.d

    def global_color(self, i: int, j: int, local: int) -> int:
        slot = i * self.m + j
        return (local - 1) * (self.d * self.m) + slot + 1

    def bucket_sizes(self) -> list[int]:
        return list(self.sizes)

    def detach(self, v: int) -> None:
        pos = self.sub_of.pop(v, None)
        if pos is not None:
            i, j = pos
            self.subs[i][j].discard(v)
            self.sizes[i] -= 1

    def _target(self, i: int, count: int) -> int | None:
        """Sub-bucket of bucket ``i`` that can take ``count`` movers, keeping one empty."""
        if self.sizes[i] + count > self.h[i] or count > self.sub_cap[i]:
            return None
        empty = [j for j, s in enumerate(self.subs[i]) if not s]
        self.work += len(self.subs[i])
        if len(empty) < 2:
            return None
        return empty[0]

    def _fill(self, i: int, j: int, vs: Iterable[int]) -> None:
        vs = sorted(vs)
        cols = self._static_color(vs)
        sub = self.subs[i][j]
        for v in vs:
            sub.add(v)
            self.sub_of[v] = (i, j)
            self.local[v] = cols[v]
            self.tau[v] = self.clock
            self.assign(v, self.global_color(i, j, cols[v]))
        self.sizes[i] += len(vs)

    def _empty_bucket(self, i: int) -> set[int]:
        out: set[int] = set()
        for s in self.subs[i]:
            out |= s
            s.clear()
        for v in out:
            self.sub_of.pop(v, None)
        self.sizes[i] = 0
        return out

    def insert_vertex(self, v: int) -> None:
        self.insertions += 1
        moving = {v}
        for i in range(self.d):
            j = self._target(i, len(moving))
            if j is not None:
                if i:
                    self.moves_per_level[i] += len(moving)
                self._fill(i, j, moving)
                return
            if i == 0:
                self.cascades += 1
            moving |= self._empty_bucket(i)
        self.full_reset()

    def invariant_violations(self) -> list[str]:
        out = self.check_invariants()
        for i in range(self.d):
            subs = self.subs[i]
            if all(subs):
                out.append(f"bucket {i + 1}: no empty reset sub-bucket")
            for j, s in enumerate(subs):
                if len(s) > self.sub_cap[i]:
                    out.append(f"sub-bucket ({i + 1},{j + 1}): {len(s)} > {self.sub_cap[i]}")
        return out

    def full_reset(self, initial: bool = False) -> None:
        """Set N_R to twice the order and left-pack every vertex into ``V_d``."""
        n = self.graph.n
        if not initial:
            self.n_r = max(2, 2 * n)
            self._note_reset()
        while True:
            self._rebuild_capacities()
            self._rebuild_subs()
            cap = self.sub_cap[-1]
            if n <= self.h[-1] and -(-n // cap) <= self.m - 1:
                break
            self.n_r *= 2
        self.sub_of.clear()
        vs = sorted(self.graph.adj)
        cap = self.sub_cap[-1]
        for j in range(0, len(vs), cap):
            self._fill(self.d - 1, j // cap, vs[j : j + cap])
