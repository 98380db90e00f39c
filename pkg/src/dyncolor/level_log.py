"""Randomized (Delta+1) colorer with O(log Delta) expected amortized update time.

Vertices live on levels ``4..L`` with ``L = max(4, ceil(log_beta Delta))``.
Two invariants are restored before every conflict repair:

* down-neighbors of ``v`` number at least ``beta**(level(v) - 5)``
  (not enforced on the floor level 4, where no down-neighbor can exist);
* down- plus same-level neighbors number at most ``beta**level(v)``.

A conflicting insertion recolors its more recently recolored endpoint with
a color drawn from the first ``beta**level`` candidate colors. A candidate is
used by at most one down-neighbor, so a recoloring chain never branches and
walks strictly down the levels.
"""
from __future__ import annotations

import random

from .levels import LevelColorer, PaletteExhausted

MIN_LEVEL = 4


class LevelRepairLimit(RuntimeError):
    """``update_levels`` exceeded its iteration guard."""


def ceil_log(x: int, base: int) -> int:
    """Smallest k >= 0 with base**k >= x."""
    k, p = 0, 1
    while p < x:
        p *= base
        k += 1
    return k


class LogLevelColorer(LevelColorer):
    name = "log"
    initial_level = MIN_LEVEL

    def __init__(
        self,
        n0: int = 0,
        seed: int = 0,
        beta: int = 4,
        lazy_deletions: bool = False,
    ) -> None:
        if beta < 2:
            raise ValueError(f"beta must be >= 2, got {beta}")
        super().__init__(n0, seed, lazy_deletions)
        self.beta = beta
        self.dirty: set[int] = set()
        # chain statistics: (delta at the time, chain length)
        self.chain_log: list[tuple[int, int]] = []
        self.max_fanout = 0
        self.draws = 0
        self.recursive_draws = 0
        self.level_moves = 0

    @property
    def top_level(self) -> int:
        return max(MIN_LEVEL, ceil_log(self.graph.delta, self.beta))

    # ---- invariants ------------------------------------------------------

    def violates_down(self, x: int) -> bool:
        lx = self.level[x]
        return lx > MIN_LEVEL and self.phi(x, lx) < self.beta ** (lx - 5)

    def violates_up(self, x: int) -> bool:
        lx = self.level[x]
        return self.phi(x, lx + 1) > self.beta**lx

    def check_invariants(self, vertices=None) -> list[str]:
        out = []
        top = self.top_level
        vs = self.level if vertices is None else [v for v in vertices if v in self.level]
        for v in sorted(vs):
            lv = self.level[v]
            if not MIN_LEVEL <= lv <= top:
                out.append(f"vertex {v}: level {lv} outside {MIN_LEVEL}..{top}")
            if self.violates_down(v):
                out.append(f"vertex {v}: too few down-neighbors at level {lv}")
            if self.violates_up(v):
                out.append(f"vertex {v}: too many down/same-level neighbors at level {lv}")
        return out

    # ---- edge insertion --------------------------------------------------

    def on_vertex_insert(self, v: int) -> None:
        super().on_vertex_insert(v)
        self.dirty.add(v)

    def on_edge_insert(self, u: int, v: int) -> None:
        self.handle_insertion(u, v)

    def handle_insertion(self, u: int, v: int) -> None:
        """Repair levels, then recolor the more recent endpoint on a conflict.

        The graph already contains the edge when this runs, so the level
        repair accounts for it and both invariants hold once it returns.
        """
        self._link(u, v)
        self.dirty.add(u)
        self.dirty.add(v)
        self.update_levels()
        chi = self.coloring.chi
        if chi[u] == chi[v]:
            self.recolor(self.more_recent(u, v))

    def on_edge_delete(self, u: int, v: int) -> None:
        super().on_edge_delete(u, v)
        self.dirty.add(u)
        self.dirty.add(v)
        self.update_levels()

    def on_vertex_delete(self, v: int) -> None:
        nbrs = list(self.graph.adj[v])
        super().on_vertex_delete(v)
        self.dirty.discard(v)
        self.dirty.update(nbrs)

    def on_level_changed(self, v: int) -> None:
        self.dirty.add(v)
        self.dirty.update(self.graph.adj[v])

    def update_levels(self) -> int:
        """Move vertices until both invariants hold; returns the number of moves.

        Vertices with too many down/same-level neighbors are promoted first,
        each to the lowest level where it fits; only when none remain is a
        vertex with too few down-neighbors demoted, to the highest level k
        below it with at least ``beta**(k-1)`` neighbors under k, else to 4.
        """
        beta = self.beta
        moves = 0
        guard = max(16, self.graph.n * self.top_level)
        level = self.level
        while self.dirty:
            promote = demote = None
            for x in sorted(self.dirty):
                if x not in level:
                    self.dirty.discard(x)
                elif self.violates_up(x):
                    promote = x
                    break
                elif self.violates_down(x):
                    if demote is None:
                        demote = x
                else:
                    self.dirty.discard(x)
            self.work += 1
            if promote is not None:
                x = promote
                k = level[x] + 1
                top = self.top_level
                while k < top and self.phi(x, k + 1) > beta**k:
                    k += 1
                self.set_level(x, k)
            elif demote is not None:
                x = demote
                target = MIN_LEVEL
                for k in range(level[x] - 1, MIN_LEVEL - 1, -1):
                    if self.phi(x, k) >= beta ** (k - 1):
                        target = k
                        break
                self.set_level(x, target)
            else:
                break
            moves += 1
            if moves > guard:
                raise LevelRepairLimit(f"level repair did not settle after {moves} moves")
        self.level_moves += moves
        return moves

    # ---- recoloring ------------------------------------------------------

    def sample_from_d_truncated(self, v: int, rng: random.Random | None = None) -> int:
        """Uniform draw from the first ``beta**level(v)`` candidate colors of ``v``."""
        cands = self.candidates(v)
        if not cands:
            raise PaletteExhausted(f"empty candidate palette at vertex {v}")
        cut = self.beta ** self.level[v]
        pool = cands if len(cands) <= cut else cands[:cut]
        return (rng or self.rng).choice(pool)

    def recolor(self, v: int) -> int:
        """Recolor ``v``, following the single-branch chain down the levels.

        Returns the chain length.
        """
        x = v
        length = 0
        while True:
            c = self.sample_from_d_truncated(x)
            self.draws += 1
            holders = self.down_holders(x, c)
            if len(holders) > self.max_fanout:
                self.max_fanout = len(holders)
            self.set_color(x, c)
            length += 1
            if not holders:
                break
            self.recursive_draws += 1
            x = holders[0]
        self._report.chains.append(length)
        self.chain_log.append((self.graph.delta, length))
        return length
