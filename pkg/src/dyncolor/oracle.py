"""Ground-truth checkers and reference colorers.

Nothing here reads colorer state beyond the plain vertex->color map (and, for
:func:`brute_force_palette`, the vertex->level map), so these functions can
be used as independent oracles in differential tests.
"""
from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .graph import DynamicGraph


class ViolationKind(str, enum.Enum):
    MONOCHROMATIC_EDGE = "monochromatic-edge"
    MISSING_COLOR = "missing-color"
    PALETTE_OVERFLOW = "palette-overflow"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    witness: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "witness": list(self.witness)}


def verify_proper(
    g: DynamicGraph,
    chi: Mapping[int, int],
    palette: int | None = None,
) -> list[Violation]:
    """Full scan for improper edges, uncolored live vertices and out-of-range colors.

    ``palette`` is the largest admissible color; ``None`` skips the range check.
    Witnesses are (u, v, color) for monochromatic edges, (v,) for missing
    colors and (v, color) for palette overflows.
    """
    out: list[Violation] = []
    for v in sorted(g.adj):
        c = chi.get(v)
        if c is None:
            out.append(Violation(ViolationKind.MISSING_COLOR, (v,)))
        elif c < 1 or (palette is not None and c > palette):
            out.append(Violation(ViolationKind.PALETTE_OVERFLOW, (v, c)))
    for u, v in g.edges():
        cu = chi.get(u)
        if cu is not None and cu == chi.get(v):
            out.append(Violation(ViolationKind.MONOCHROMATIC_EDGE, (u, v, cu)))
    out.sort(key=lambda x: (x.kind.value, x.witness))
    return out


def verify_touched(
    g: DynamicGraph,
    chi: Mapping[int, int],
    touched: Iterable[int],
    palette: int | None = None,
) -> list[Violation]:
    """Check only the edges incident to ``touched``.

    If the coloring was proper before a step, every edge that can be
    monochromatic after it is incident to a vertex whose color was written
    or to an inserted edge's endpoint, so this is a complete check for one
    step given those vertices.
    """
    out: list[Violation] = []
    adj = g.adj
    seen: set[int] = set()
    for v in touched:
        if v in seen or v not in adj:
            continue
        seen.add(v)
        c = chi.get(v)
        if c is None:
            out.append(Violation(ViolationKind.MISSING_COLOR, (v,)))
            continue
        if c < 1 or (palette is not None and c > palette):
            out.append(Violation(ViolationKind.PALETTE_OVERFLOW, (v, c)))
        for w in adj[v]:
            if chi.get(w) == c and g.has_edge(v, w):
                a, b = (v, w) if v < w else (w, v)
                out.append(Violation(ViolationKind.MONOCHROMATIC_EDGE, (a, b, c)))
    return sorted(set(out), key=lambda x: (x.kind.value, x.witness))


def greedy_delta_plus_one(g: DynamicGraph) -> dict[int, int]:
    """Ascending-id greedy: each vertex takes its smallest blank color."""
    chi: dict[int, int] = {}
    for v in sorted(g.adj):
        used = {chi[w] for w in g.adj[v] if w in chi and g.has_edge(v, w)}
        c = 1
        while c in used:
            c += 1
        chi[v] = c
    return chi


MAX_EXACT_ORDER = 16


def exact_coloring(g: DynamicGraph) -> dict[int, int]:
    """An optimal proper coloring by branch and bound (n <= 16).

    Vertices are tried largest-degree first; a vertex may only open one new
    color beyond those already in use, which also pins the first vertex to
    color 1.
    """
    if g.n > MAX_EXACT_ORDER:
        raise ValueError(f"exact coloring refused: n={g.n} > {MAX_EXACT_ORDER}")
    order = sorted(g.adj, key=lambda v: (-len(g.adj[v]), v))
    if not order:
        return {}
    nbrs = {v: [w for w in g.adj[v] if g.has_edge(v, w)] for v in order}
    best = greedy_delta_plus_one(g)
    best_k = max(best.values())
    chi: dict[int, int] = {}

    def search(i: int, used: int) -> None:
        nonlocal best, best_k
        if used >= best_k:
            return
        if i == len(order):
            best, best_k = dict(chi), used
            return
        v = order[i]
        taken = {chi[w] for w in nbrs[v] if w in chi}
        for c in range(1, min(used + 1, best_k - 1) + 1):
            if c in taken:
                continue
            chi[v] = c
            search(i + 1, max(used, c))
            del chi[v]

    search(0, 0)
    return best


def exact_chromatic_number(g: DynamicGraph) -> int:
    chi = exact_coloring(g)
    return max(chi.values(), default=0)


@dataclass(frozen=True)
class PaletteView:
    """The per-vertex color sets of the level data structure.

    ``blank``: colors of no neighbor; ``up``: colors of some up-neighbor;
    ``once_down`` / ``multi_down``: colors of no up-neighbor and exactly one /
    at least two down-neighbors; ``candidates``: palette minus ``up`` minus
    ``multi_down``. The four sets blank, up, once_down, multi_down partition
    the palette.
    """

    palette: int
    blank: frozenset[int]
    up: frozenset[int]
    once_down: frozenset[int]
    multi_down: frozenset[int]
    candidates: tuple[int, ...]


def brute_force_palette(
    g: DynamicGraph,
    chi: Mapping[int, int],
    v: int,
    level: Mapping[int, int],
    palette: int,
) -> PaletteView:
    """Recompute every palette set of ``v`` from scratch by a neighbor scan."""
    full = range(1, palette + 1)
    lv = level[v]
    down_count: dict[int, int] = {}
    up: set[int] = set()
    nbr_colors: set[int] = set()
    for w in g.adj[v]:
        if not g.has_edge(v, w):
            continue
        c = chi[w]
        nbr_colors.add(c)
        if level[w] < lv:
            down_count[c] = down_count.get(c, 0) + 1
        else:
            up.add(c)
    once = frozenset(c for c, k in down_count.items() if k == 1 and c not in up)
    multi = frozenset(c for c, k in down_count.items() if k >= 2 and c not in up)
    blank = frozenset(c for c in full if c not in nbr_colors)
    cands = tuple(c for c in full if c not in up and c not in multi)
    return PaletteView(palette, blank, frozenset(up), once, multi, cands)
