"""Constant-time (Delta+1) colorer with epoch instrumentation.

Levels run from -1 to ``ceil(log3 n)``; new vertices start on level 0.
A recoloring of ``v`` is deterministic when fewer than ``3**(level(v)+2)``
neighbors sit below ``v``: it takes a blank color and drops to level -1.
Otherwise ``v`` climbs while ``phi(v, l+1) >= 3**(l+2)``, draws from the
first ``(3**l + 1) // 2`` candidate colors and, if that color is held by a
single down-neighbor, recurses on it.

Each vertex's timeline is cut into epochs at its recolorings. An epoch
records the cost of the call that opened it, its duration (edge insertions
during the epoch) and its pseudo-duration: the number of insertions at
which a neighbor took a color not seen before during the epoch, counted
until a neighbor takes the epoch's own color.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .levels import LevelColorer, PaletteExhausted

ORIGINAL = "original"
INDUCED = "induced"
FINAL = "final"
CAUSES = (ORIGINAL, INDUCED, FINAL)


def ceil_log3(n: int) -> int:
    k, p = 0, 1
    while p < n:
        p *= 3
        k += 1
    return k


@dataclass
class EpochRecord:
    vertex: int
    start: int
    level: int
    color: int
    opened_by: str
    cost: int
    start_ins: int
    end: int | None = None
    end_ins: int | None = None
    cause: str | None = None
    psdur: int = 0
    seen: set[int] = field(default_factory=set, repr=False)
    stopped: bool = False
    last_step: int = -1

    @property
    def dur(self) -> int:
        return (self.end_ins if self.end_ins is not None else self.start_ins) - self.start_ins

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "start": self.start,
            "end": self.end,
            "level": self.level,
            "color": self.color,
            "opened_by": self.opened_by,
            "cause": self.cause,
            "cost": self.cost,
            "dur": self.dur,
            "psdur": self.psdur,
        }


def classify_levels(epochs, level: int) -> str:
    """Heaviness class of one level from the termination causes of its epochs."""
    at = [e for e in epochs if e.level == level]
    if not at:
        return "empty"
    n = len(at)
    induced = sum(e.cause == INDUCED for e in at) / n
    final = sum(e.cause == FINAL for e in at) / n
    if induced >= 0.5:
        return "induced-heavy"
    if final >= 0.125:
        return "final-heavy"
    return "original-heavy"


def classify_fractions(induced: float, final: float) -> str:
    if induced >= 0.5:
        return "induced-heavy"
    if final >= 0.125:
        return "final-heavy"
    return "original-heavy"


@dataclass
class EpochStats:
    epochs: list[EpochRecord]
    charged: list[int]
    per_level: dict[int, dict]
    psdur_violations: int
    tiling_violations: int
    raw_cost: int
    charged_cost: int

    def summary(self) -> dict:
        return {
            "count": len(self.epochs),
            "by_cause": {c: sum(e.cause == c for e in self.epochs) for c in CAUSES},
            "raw_cost": self.raw_cost,
            "charged_cost": self.charged_cost,
            "psdur_violations": self.psdur_violations,
            "tiling_violations": self.tiling_violations,
            "per_level": {str(k): v for k, v in sorted(self.per_level.items())},
        }


class ConstLevelColorer(LevelColorer):
    name = "const"
    initial_level = 0

    def __init__(self, n0: int = 0, seed: int = 0, lazy_deletions: bool = False) -> None:
        super().__init__(n0, seed, lazy_deletions)
        self.cap_level = ceil_log3(max(n0, 1))
        self.insertions = 0
        self.seq = 0
        self.open_epoch: dict[int, EpochRecord] = {}
        self.closed: list[EpochRecord] = []
        # (level, palette size) for every random recoloring
        self.palette_log: list[tuple[int, int]] = []
        self.deterministic_calls = 0
        self.random_calls = 0
        self.original_calls = 0
        self.induced_calls = 0
        self.phi_mismatches = 0

    # ---- epochs ----------------------------------------------------------

    def _open(self, v: int, opened_by: str, cost: int) -> None:
        self.seq += 1
        self.open_epoch[v] = EpochRecord(
            vertex=v,
            start=self.seq,
            level=self.level[v],
            color=self.coloring.chi[v],
            opened_by=opened_by,
            cost=cost,
            start_ins=self.insertions,
        )

    def _close(self, v: int, cause: str) -> None:
        ep = self.open_epoch.pop(v)
        self.seq += 1
        ep.end = self.seq
        ep.end_ins = self.insertions
        ep.cause = cause
        self.closed.append(ep)

    def _observe(self, y: int, c: int) -> None:
        ep = self.open_epoch.get(y)
        if ep is None or ep.stopped:
            return
        step = self.insertions
        if step <= ep.start_ins:
            return
        if c not in ep.seen:
            ep.seen.add(c)
            if step != ep.last_step:
                ep.psdur += 1
                ep.last_step = step
        if c == ep.color:
            ep.stopped = True

    # ---- structure hooks -------------------------------------------------

    def on_vertex_insert(self, v: int) -> None:
        super().on_vertex_insert(v)
        self.cap_level = max(self.cap_level, ceil_log3(self.graph.n))
        self._open(v, "init", 0)

    def on_vertex_delete(self, v: int) -> None:
        super().on_vertex_delete(v)
        self._close(v, FINAL)

    def set_color(self, v: int, c: int) -> None:
        super().set_color(v, c)
        if self.open_epoch:
            for w in self.graph.adj[v]:
                self._observe(w, c)

    # ---- insertion and recoloring ---------------------------------------

    def on_edge_insert(self, u: int, v: int) -> None:
        self.handle_insertion(u, v)

    def handle_insertion(self, u: int, v: int) -> None:
        """No level repair here: only a conflicting insertion does anything."""
        self.insertions += 1
        self._link(u, v)
        chi = self.coloring.chi
        self._observe(u, chi[v])
        self._observe(v, chi[u])
        if chi[u] == chi[v]:
            self.recolor(self.more_recent(u, v))

    def recolor(self, v: int) -> int:
        """Original recoloring call on ``v``; returns the number of calls in the chain."""
        x: int | None = v
        cause = ORIGINAL
        length = 0
        while x is not None:
            if cause == ORIGINAL:
                self.original_calls += 1
            else:
                self.induced_calls += 1
            self._close(x, cause)
            w0 = self.work
            lx = self.level[x]
            phi = self.phi(x, lx)
            if phi != self._phi_brute(x, lx):
                self.phi_mismatches += 1
            if phi < 3 ** (lx + 2):
                self.deterministic_recolor(x)
                nxt = None
            else:
                nxt = self.random_recolor(x)
            self._open(x, cause, self.work - w0)
            length += 1
            x = nxt
            cause = INDUCED
        self._report.chains.append(length)
        return length

    def _phi_brute(self, v: int, lstar: int) -> int:
        level = self.level
        return sum(1 for w in self.graph.adj[v] if level[w] < lstar)

    def deterministic_recolor(self, v: int) -> None:
        """First candidate color unused by every down-neighbor; then level -1."""
        self.deterministic_calls += 1
        down = self.down[v]
        for c in self.candidates(v):
            self.work += 1
            if c not in down:
                self.set_color(v, c)
                self.set_level(v, -1)
                return
        raise PaletteExhausted(f"no blank candidate at vertex {v}")

    def random_recolor(self, v: int) -> int | None:
        """Climb, draw from the truncated candidate palette, report the conflicting down-neighbor."""
        self.random_calls += 1
        lp = self.level[v]
        while lp < self.cap_level and self.phi(v, lp + 1) >= 3 ** (lp + 2):
            lp += 1
        self.set_level(v, lp)
        cands = self.candidates(v)
        if not cands:
            raise PaletteExhausted(f"empty candidate palette at vertex {v}")
        size = (3**lp + 1) // 2
        pool = cands if len(cands) <= size else cands[:size]
        self.palette_log.append((lp, len(pool)))
        c = self.rng.choice(pool)
        if c != self.coloring.chi[v]:
            self.set_color(v, c)
        if self.down[v].get(c, 0) == 1 and c not in self.up[v]:
            holders = self.down_holders(v, c)
            return holders[0]
        return None

    # ---- audits ----------------------------------------------------------

    def palette_cap_violations(self) -> list[tuple[int, int]]:
        return [(lv, size) for lv, size in self.palette_log if lv != -1 and size > (3**lv + 1) / 2]

    def epoch_report(self) -> EpochStats:
        """Close open epochs as final, charge level -1 epochs to their predecessors.

        A level -1 epoch's cost moves to the nearest earlier epoch of the same
        vertex that is not on level -1 (or the vertex's first epoch).
        """
        epochs = list(self.closed)
        for v, ep in self.open_epoch.items():
            snap = EpochRecord(
                vertex=v,
                start=ep.start,
                level=ep.level,
                color=ep.color,
                opened_by=ep.opened_by,
                cost=ep.cost,
                start_ins=ep.start_ins,
                end=self.seq + 1,
                end_ins=self.insertions,
                cause=FINAL,
                psdur=ep.psdur,
            )
            epochs.append(snap)
        epochs.sort(key=lambda e: (e.vertex, e.start))
        charged = [e.cost for e in epochs]
        tiling = 0
        anchor = 0
        for i, e in enumerate(epochs):
            first = i == 0 or epochs[i - 1].vertex != e.vertex
            if first:
                anchor = i
            else:
                if epochs[i - 1].end != e.start - 1 and epochs[i - 1].end != e.start:
                    tiling += 1
                if e.level == -1:
                    charged[anchor] += charged[i]
                    charged[i] = 0
                else:
                    anchor = i
            if e.end is None or e.end < e.start:
                tiling += 1
        per_level: dict[int, dict] = defaultdict(lambda: {"count": 0, "dur": 0, "psdur": 0})
        for e in epochs:
            row = per_level[e.level]
            row["count"] += 1
            row["dur"] += e.dur
            row["psdur"] += e.psdur
        for lv, row in per_level.items():
            at = [e for e in epochs if e.level == lv]
            row["class"] = classify_levels(at, lv)
            row["mean_dur"] = row["dur"] / row["count"]
            row["mean_psdur"] = row["psdur"] / row["count"]
        return EpochStats(
            epochs=epochs,
            charged=charged,
            per_level=dict(per_level),
            psdur_violations=sum(e.psdur > e.dur for e in epochs),
            tiling_violations=tiling,
            raw_cost=sum(e.cost for e in epochs),
            charged_cost=sum(charged),
        )
