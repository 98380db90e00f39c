"""Level data structure shared by the logarithmic and constant-time colorers.

Per vertex ``v`` we keep

* ``nlev[v]``: neighbor count per neighbor level,
* ``down[v]``: color -> count over neighbors strictly below ``level[v]``,
* ``up[v]``: color -> count over neighbors at or above ``level[v]``.

Every palette set (blank, up-used, once-down, multi-down, candidates) is
read off these counters; :func:`dyncolor.oracle.brute_force_palette`
recomputes them from scratch for differential tests.
"""
from __future__ import annotations

from .base import Colorer
from .oracle import PaletteView


class PaletteExhausted(RuntimeError):
    """A candidate palette came up empty, which the level invariants rule out."""


def _inc(d: dict[int, int], k: int) -> None:
    d[k] = d.get(k, 0) + 1


def _dec(d: dict[int, int], k: int) -> None:
    n = d[k] - 1
    if n:
        d[k] = n
    else:
        del d[k]


class LevelColorer(Colorer):
    initial_level = 0

    def __init__(self, n0: int = 0, seed: int = 0, lazy_deletions: bool = False) -> None:
        super().__init__(n0, seed, lazy_deletions)
        self.level: dict[int, int] = {}
        self.nlev: dict[int, dict[int, int]] = {}
        self.down: dict[int, dict[int, int]] = {}
        self.up: dict[int, dict[int, int]] = {}
        # when a set, collects every vertex whose counters or level changed
        self.audit_touched: set[int] | None = None

    # ---- structure maintenance ----------------------------------------

    def on_vertex_insert(self, v: int) -> None:
        self.level[v] = self.initial_level
        self.nlev[v] = {}
        self.down[v] = {}
        self.up[v] = {}
        if self.audit_touched is not None:
            self.audit_touched.add(v)
        self.tau[v] = self.clock
        self.assign(v, self.rng.randint(1, self.palette_size))

    def on_vertex_delete(self, v: int) -> None:
        for w in self.graph.adj[v]:
            self._unlink_half(w, v)
        for d in (self.level, self.nlev, self.down, self.up):
            d.pop(v, None)

    def _link(self, u: int, v: int) -> None:
        self._link_half(u, v)
        self._link_half(v, u)
        self.work += 2

    def _link_half(self, x: int, y: int) -> None:
        """Account for the new neighbor ``y`` in ``x``'s counters."""
        if self.audit_touched is not None:
            self.audit_touched.add(x)
        ly = self.level[y]
        _inc(self.nlev[x], ly)
        c = self.coloring.chi[y]
        _inc(self.down[x] if ly < self.level[x] else self.up[x], c)

    def _unlink_half(self, x: int, y: int) -> None:
        if self.audit_touched is not None:
            self.audit_touched.add(x)
        ly = self.level[y]
        _dec(self.nlev[x], ly)
        c = self.coloring.chi[y]
        _dec(self.down[x] if ly < self.level[x] else self.up[x], c)

    def on_edge_delete(self, u: int, v: int) -> None:
        self._unlink_half(u, v)
        self._unlink_half(v, u)
        self.work += 2

    def set_color(self, v: int, c: int) -> None:
        old = self.coloring.chi[v]
        if old != c:
            lv = self.level[v]
            level, down, up = self.level, self.down, self.up
            nbrs = self.graph.adj[v]
            for w in nbrs:
                d = down[w] if lv < level[w] else up[w]
                _dec(d, old)
                _inc(d, c)
            self.work += len(nbrs)
            if self.audit_touched is not None:
                self.audit_touched.update(nbrs)
        self.assign(v, c)

    def set_level(self, v: int, new: int) -> None:
        old = self.level[v]
        if old == new:
            return
        c = self.coloring.chi[v]
        level, nlev, down, up = self.level, self.nlev, self.down, self.up
        nbrs = self.graph.adj[v]
        for w in nbrs:
            lw = level[w]
            nl = nlev[w]
            _dec(nl, old)
            _inc(nl, new)
            was_down = old < lw
            if was_down != (new < lw):
                if was_down:
                    _dec(down[w], c)
                    _inc(up[w], c)
                else:
                    _dec(up[w], c)
                    _inc(down[w], c)
        level[v] = new
        dv: dict[int, int] = {}
        uv: dict[int, int] = {}
        chi = self.coloring.chi
        for w in nbrs:
            _inc(dv if level[w] < new else uv, chi[w])
        down[v] = dv
        up[v] = uv
        self.work += 2 * len(nbrs)
        if self.audit_touched is not None:
            self.audit_touched.update(nbrs)
            self.audit_touched.add(v)
        self.on_level_changed(v)

    def on_level_changed(self, v: int) -> None:
        pass

    # ---- queries -------------------------------------------------------

    def phi(self, v: int, lstar: int) -> int:
        """Number of neighbors of ``v`` strictly below level ``lstar``."""
        return sum(k for lv, k in self.nlev[v].items() if lv < lstar)

    def down_size(self, v: int) -> int:
        return self.phi(v, self.level[v])

    def same_size(self, v: int) -> int:
        return self.nlev[v].get(self.level[v], 0)

    def candidates(self, v: int) -> list[int]:
        """Colors used by no up-neighbor and at most one down-neighbor, ascending."""
        up = self.up[v]
        down = self.down[v]
        p = self.palette_size
        self.work += p
        return [c for c in range(1, p + 1) if c not in up and down.get(c, 0) < 2]

    def down_holders(self, v: int, c: int) -> list[int]:
        lv = self.level[v]
        nbrs = self.graph.adj[v]
        level = self.level
        hs = self.coloring.holders(c)
        self.work += len(hs)
        return [w for w in hs if w in nbrs and level[w] < lv]

    def palette_view(self, v: int) -> PaletteView:
        p = self.palette_size
        up = self.up[v]
        down = self.down[v]
        once = frozenset(c for c, k in down.items() if k == 1 and c not in up)
        multi = frozenset(c for c, k in down.items() if k >= 2 and c not in up)
        blank = frozenset(c for c in range(1, p + 1) if c not in up and c not in down)
        cands = tuple(c for c in range(1, p + 1) if c not in up and c not in multi)
        return PaletteView(p, blank, frozenset(up), once, multi, cands)

    def candidate_count(self, v: int) -> int:
        up = self.up[v]
        multi = sum(1 for c, k in self.down[v].items() if k >= 2 and c not in up)
        return self.palette_size - len(up) - multi

    def candidate_bound_violations(self, vertices=None) -> list[int]:
        """Vertices whose candidate palette is smaller than |down|/2 + 1."""
        vs = self.level if vertices is None else vertices
        out = []
        for v in vs:
            if v in self.level and self.candidate_count(v) < self.down_size(v) / 2 + 1:
                out.append(v)
        return out
