"""Sparse-dense (Delta+1) colorer meant to hold up against adaptive update streams.

The vertex set is split into *sparse* vertices, whose neighborhoods are far
from a Delta-clique, and *almost-cliques*. Sparse vertices are recolored at
random in batches (the one-shot refresh), which leaves each of them with
spare colors, so a conflicting sparse vertex finds a fitting color after a
few uniform draws; each draw is checked through the per-color member
index. Almost-cliques are colored by pairing up non-adjacent members on a
shared color and matching the rest to distinct colors; conflicts inside a
clique are repaired by sampling unused colors or by short augmenting paths
through the vertex/color feasibility graph.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse as sp

from .base import Colorer
from .graph import DynamicGraph, RecolorReport, UpdateEvent
from .matching import HallViolation, greedy_non_edge_matching, perfect_matching

SPARSE = -1


class PaletteExhausted(RuntimeError):
    """No blank color for a vertex, which a Delta+1 palette rules out."""


# ---- decomposition ---------------------------------------------------------


@dataclass
class Decomposition:
    epsilon: float
    delta: int
    sparse: set[int]
    cliques: list[set[int]]
    membership: dict[int, int]
    # True when no valid clique cover was found and every vertex was declared sparse
    fallback: bool = False
    diagnostics: list[str] = field(default_factory=list)

    def clique_of(self, v: int) -> int:
        return self.membership[v]


def triangle_counts(g: DynamicGraph) -> dict[int, int]:
    """Edges inside each neighborhood, ``|E(G) & N(v)^2|``."""
    vs = sorted(g.adj)
    if not vs:
        return {}
    idx = {v: i for i, v in enumerate(vs)}
    rows, cols = [], []
    for u, w in g.edges():
        rows.append(idx[u])
        cols.append(idx[w])
    n = len(vs)
    if not rows:
        return dict.fromkeys(vs, 0)
    r = np.array(rows + cols, dtype=np.int64)
    c = np.array(cols + rows, dtype=np.int64)
    a = sp.csr_matrix((np.ones(len(r), dtype=np.int64), (r, c)), shape=(n, n))
    t = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel() // 2
    return {v: int(t[i]) for i, v in enumerate(vs)}


def sparsity_threshold(delta: int, epsilon: float) -> float:
    return (1 - epsilon**2) * math.comb(delta, 2)


def clique_violations(g: DynamicGraph, members: set[int], epsilon: float, delta: int) -> list[str]:
    """Every failed almost-clique predicate of ``members``, as text."""
    out = []
    size = len(members)
    slack = epsilon * delta
    if not (1 - epsilon) * delta <= size <= (1 + epsilon) * delta:
        out.append(f"order {size} outside [{(1 - epsilon) * delta:g}, {(1 + epsilon) * delta:g}]")
    for v in sorted(members):
        nv = g.adj[v]
        inside = len(nv & members)
        if size - inside > slack:
            out.append(f"vertex {v} misses {size - inside} members (> {slack:g})")
        if len(nv) - inside > slack:
            out.append(f"vertex {v} has {len(nv) - inside} outside neighbors (> {slack:g})")
    return out


def check_decomposition(g: DynamicGraph, dec: Decomposition) -> list[str]:
    """Partition, sparsity and almost-clique checks; empty means valid.

    A fallback decomposition (no cliques) is checked for being a partition
    only.
    """
    out = []
    seen: dict[int, int] = {}
    for v in dec.sparse:
        seen[v] = SPARSE
    for i, cl in enumerate(dec.cliques):
        for v in cl:
            if v in seen:
                out.append(f"vertex {v} placed twice")
            seen[v] = i
    if set(seen) != set(g.adj):
        out.append("decomposition does not cover the vertex set exactly")
    for v, i in seen.items():
        if dec.membership.get(v) != i:
            out.append(f"membership of {v} disagrees with the parts")
    if dec.fallback:
        if dec.cliques:
            out.append("fallback decomposition carries cliques")
        return out
    t = triangle_counts(g)
    thr = sparsity_threshold(dec.delta, dec.epsilon)
    for v in sorted(g.adj):
        is_sparse = t[v] <= thr
        if is_sparse != (v in dec.sparse):
            out.append(f"vertex {v}: {t[v]} neighborhood edges vs threshold {thr:g}")
    for i, cl in enumerate(dec.cliques):
        out.extend(f"clique {i}: {msg}" for msg in clique_violations(g, cl, dec.epsilon, dec.delta))
    return out


def _prune(g: DynamicGraph, members: set[int], slack: float) -> set[int]:
    """Drop the worst offender until every member meets both per-vertex predicates."""
    members = set(members)
    while members:
        size = len(members)
        worst, worst_excess = None, 0.0
        for u in sorted(members):
            nu = g.adj[u]
            inside = len(nu & members)
            excess = max(size - inside, len(nu) - inside) - slack
            if excess > 0 and excess >= worst_excess:
                worst, worst_excess = u, excess
        if worst is None:
            break
        members.discard(worst)
    return members


def _grow(
    g: DynamicGraph,
    members: set[int],
    pool: set[int],
    epsilon: float,
    delta: int,
) -> set[int]:
    cands = set()
    for u in members:
        cands |= g.adj[u] & pool
    cands -= members
    order = sorted(cands, key=lambda w: (-len(g.adj[w] & members), w))
    upper = (1 + epsilon) * delta
    for w in order:
        if len(members) + 1 > upper:
            break
        trial = members | {w}
        if not _vertex_violations(g, trial, epsilon * delta):
            members = trial
    return members


def _vertex_violations(g: DynamicGraph, members: set[int], slack: float) -> bool:
    size = len(members)
    for v in members:
        nv = g.adj[v]
        inside = len(nv & members)
        if size - inside > slack or len(nv) - inside > slack:
            return True
    return False


def hss_decompose(g: DynamicGraph, epsilon: float, delta: int | None = None) -> Decomposition:
    """Split the vertices into sparse ones and almost-cliques.

    Dense vertices are grouped by seed-and-grow: a seed (highest
    neighborhood edge count first) takes its dense neighbors, offenders are
    pruned, other dense vertices are added while every predicate holds.
    Leftover dense vertices are attached to a clique when that keeps it
    valid; if any remain, everything is declared sparse.
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    delta = g.delta if delta is None else delta
    vs = set(g.adj)
    if delta < 1 or not vs:
        return Decomposition(epsilon, delta, vs, [], dict.fromkeys(vs, SPARSE))
    t = triangle_counts(g)
    thr = sparsity_threshold(delta, epsilon)
    dense = {v for v in vs if t[v] > thr}
    sparse_set = vs - dense
    cliques: list[set[int]] = []
    free = set(dense)
    slack = epsilon * delta
    for s in sorted(dense, key=lambda v: (-t[v], v)):
        if s not in free:
            continue
        members = _prune(g, {s} | (g.adj[s] & free), slack)
        members = _grow(g, members, free, epsilon, delta)
        if members and not clique_violations(g, members, epsilon, delta):
            cliques.append(members)
            free -= members
    for v in sorted(free):
        for cl in cliques:
            trial = cl | {v}
            if not clique_violations(g, trial, epsilon, delta):
                cl.add(v)
                break
    free -= set().union(*cliques) if cliques else set()
    if free:
        msg = f"{len(free)} dense vertices fit no almost-clique (e.g. {sorted(free)[:5]}); all vertices sparse"
        return Decomposition(epsilon, delta, vs, [], dict.fromkeys(vs, SPARSE), True, [msg])
    cliques.sort(key=min)
    membership = dict.fromkeys(sparse_set, SPARSE)
    for i, cl in enumerate(cliques):
        for v in cl:
            membership[v] = i
    return Decomposition(epsilon, delta, sparse_set, cliques, membership)


# ---- dense coloring primitives --------------------------------------------


def feasibility_graph(
    g: DynamicGraph,
    color_of: Callable[[int], int | None],
    remaining: Iterable[int],
    colors: Iterable[int],
) -> dict[int, list[int]]:
    """Vertex -> usable colors: colors held by no neighbor outside ``remaining``."""
    rem = set(remaining)
    palette = list(colors)
    out = {}
    for x in sorted(rem):
        blocked = set()
        for w in g.adj[x]:
            if w not in rem:
                c = color_of(w)
                if c is not None:
                    blocked.add(c)
        out[x] = [c for c in palette if c not in blocked]
    return out


def perfect_match_remaining(
    g: DynamicGraph,
    color_of: Callable[[int], int | None],
    remaining: Iterable[int],
    colors: Iterable[int],
) -> dict[int, int]:
    """Give every remaining vertex its own color from ``colors``, avoiding outside neighbors.

    Raises :class:`HallViolation` carrying the offending vertex set.
    """
    h = feasibility_graph(g, color_of, remaining, colors)
    return perfect_matching(sorted(h), h)


def heavy_colors(
    g: DynamicGraph,
    chi: Mapping[int, int],
    members: set[int],
    threshold: float,
) -> set[int]:
    """Colors carried out of ``members`` by at least ``threshold`` (and at least one) edges."""
    count: dict[int, int] = {}
    for a in members:
        out = len(g.adj[a]) - len(g.adj[a] & members)
        if out:
            c = chi[a]
            count[c] = count.get(c, 0) + out
    return {c for c, k in count.items() if k >= threshold}


@dataclass
class CliquePlan:
    pairs: list[tuple[int, int, int]]
    singles: dict[int, int]


def plan_clique_coloring(
    g: DynamicGraph,
    chi: Mapping[int, int],
    members: set[int],
    palette: int,
    exclude: set[int] | frozenset[int] = frozenset(),
) -> CliquePlan:
    """Pair non-adjacent members on shared colors, then match the rest to distinct colors.

    A pair takes the smallest color unused by the pairs so far and by either
    member's outside neighbors. The remaining vertices are matched to the
    unused colors minus ``exclude``.
    """
    outside = {}
    for x in members:
        outside[x] = {chi[w] for w in g.adj[x] if w not in members}
    used: set[int] = set()
    pair_color: dict[tuple[int, int], int] = {}

    def accept(u: int, w: int) -> bool:
        forb = outside[u] | outside[w] | used
        for c in range(1, palette + 1):
            if c not in forb:
                pair_color[(u, w)] = c
                used.add(c)
                return True
        return False

    pairs = greedy_non_edge_matching(members, lambda u, w: w in g.adj[u], accept)
    matched = {x for p in pairs for x in p}
    remaining = members - matched
    new = {}
    for (u, w), c in pair_color.items():
        new[u] = c
        new[w] = c

    def color_of(x: int) -> int | None:
        return new.get(x, chi.get(x))

    colors = [c for c in range(1, palette + 1) if c not in used and c not in exclude]
    singles = perfect_match_remaining(g, color_of, remaining, colors)
    return CliquePlan([(u, w, pair_color[(u, w)]) for u, w in pairs], singles)


# ---- the dynamic colorer ---------------------------------------------------


@dataclass
class SurplusSample:
    delta: int
    vertices: int
    with_surplus: int
    mean: float

    @property
    def fraction(self) -> float:
        return self.with_surplus / self.vertices if self.vertices else 1.0


class SparseDenseColorer(Colorer):
    name = "sparse-dense"

    def __init__(
        self,
        n0: int = 0,
        seed: int = 0,
        epsilon: float = 0.3,
        theta: float = 1 / 20,
        a: float = 4,
        b: float = 4,
        c_load: float = 4,
        batch_override: int | None = None,
        recompute_every: int | None = None,
        track_surplus: bool = False,
    ) -> None:
        if not 0 < epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
        if theta <= 0:
            raise ValueError(f"theta must be positive, got {theta}")
        if batch_override is not None and batch_override < 1:
            raise ValueError(f"batch size must be >= 1, got {batch_override}")
        if recompute_every is not None and recompute_every < 1:
            raise ValueError(f"recompute interval must be >= 1, got {recompute_every}")
        super().__init__(n0, seed)
        self.epsilon = epsilon
        self.theta = theta
        self.a = a
        self.b = b
        self.c_load = c_load
        self.batch_override = batch_override
        self.recompute_every = recompute_every
        self.track_surplus = track_surplus
        self.member: dict[int, int] = {}
        self.cliques: list[set[int]] = []
        self.partner: dict[int, int] = {}
        self.decomposition: Decomposition | None = None
        self.since_refresh = 0
        self.since_recompute = 0
        self.stats = {
            "refreshes": 0,
            "recomputes": 0,
            "one_shot_assigned": 0,
            "one_shot_leftover": 0,
            "sparse_recolors": 0,
            "sparse_samples": 0,
            "sparse_scans": 0,
            "dense_recolors": 0,
            "dense_samples": 0,
            "augmenting_paths": 0,
            "short_paths": 0,
            "clique_rebuilds": 0,
            "hall_failures": 0,
            "fallbacks": 0,
        }
        self.surplus_log: list[SurplusSample] = []
        self.max_load_seen = 0
        self.load_violations = 0

    # ---- parameters ----------------------------------------------------

    @property
    def batch_size(self) -> int:
        if self.batch_override is not None:
            return self.batch_override
        return max(1, math.ceil(self.epsilon**2 * self.graph.delta))

    @property
    def recompute_interval(self) -> int:
        return self.recompute_every or max(1, self.graph.n)

    @property
    def sparse_cap(self) -> int:
        return math.ceil(self.a / self.epsilon**2)

    @property
    def dense_cap(self) -> int:
        n = max(self.graph.n, 2)
        return max(1, math.ceil(self.b * self.epsilon * self.graph.delta * math.log(n)))

    def load_bound(self) -> float:
        d, n = self.graph.delta, self.graph.n
        if d == 0 or n < 2:
            return math.inf
        return self.c_load * (n / d) * math.log(n)

    # ---- driver --------------------------------------------------------

    def initialize(self) -> None:
        super().initialize()
        w0 = self.work
        self.recompute()
        self.init_work += self.work - w0
        self.coloring.drain_changes()

    def update(self, e: UpdateEvent) -> RecolorReport:
        w0 = self.work
        report = super().update(e)
        self.since_refresh += 1
        if self.since_refresh >= self.batch_size:
            self.refresh_sparse()
        self.since_recompute += 1
        if self.since_recompute >= self.recompute_interval:
            self.recompute()
        report.work = self.work - w0
        load = self.coloring.max_load()
        if load > self.max_load_seen:
            self.max_load_seen = load
        if load > self.load_bound():
            self.load_violations += 1
        return report

    # ---- hooks ---------------------------------------------------------

    def on_vertex_insert(self, v: int) -> None:
        self.member[v] = SPARSE
        self.tau[v] = self.clock
        self.assign(v, self.rng.randint(1, self.palette_size))

    def on_vertex_delete(self, v: int) -> None:
        self.unmatch(v)
        i = self.member.pop(v, SPARSE)
        if i != SPARSE:
            self.cliques[i].discard(v)

    def on_edge_insert(self, u: int, v: int) -> None:
        chi = self.coloring.chi
        self.work += 1
        if chi[u] != chi[v]:
            return
        x = self.more_recent(u, v)
        before = len(self._report.recolored)
        self.recolor(x)
        self._report.chains.append(len(self._report.recolored) - before)

    # ---- recoloring ----------------------------------------------------

    def recolor(self, x: int) -> None:
        self.unmatch(x)
        if self.member.get(x, SPARSE) == SPARSE:
            self.recolor_sparse(x)
        else:
            self.recolor_dense(x)

    def unmatch(self, x: int) -> None:
        p = self.partner.pop(x, None)
        if p is not None:
            self.partner.pop(p, None)

    def sample_feasible(self, v: int, cap: int) -> int:
        """Uniform draws from the palette checked against the member index, then a blank scan."""
        nbrs = self.graph.adj[v]
        members = self.coloring.members
        k = self.palette_size
        rand = self.rng.random
        deg = len(nbrs)
        work = 0
        for tries in range(1, cap + 1):
            c = int(rand() * k) + 1
            m = members.get(c)
            if m is None:
                work += 1
                self.work += work
                self.stats["sparse_samples"] += tries
                return c
            work += 1 + min(len(m), deg)
            if m.isdisjoint(nbrs):
                self.work += work
                self.stats["sparse_samples"] += tries
                return c
        self.work += work
        self.stats["sparse_samples"] += cap
        self.stats["sparse_scans"] += 1
        blanks = self.blank_colors(v)
        if not blanks:
            raise PaletteExhausted(f"no blank color at vertex {v}")
        return self.rng.choice(blanks)

    def recolor_sparse(self, v: int) -> int:
        c = self.sample_feasible(v, self.sparse_cap)
        self.stats["sparse_recolors"] += 1
        self.assign(v, c)
        return c

    def one_shot_sparse_coloring(self) -> set[int]:
        """Draw a color for every sparse vertex, then keep each draw no neighbor currently holds.

        Vertices are processed in ascending id against the partially
        updated coloring; the returned set holds the vertices that kept
        their draw.
        """
        vs = sorted(v for v, i in self.member.items() if i == SPARSE)
        k = self.palette_size
        rand = self.rng.random
        draw = [int(rand() * k) + 1 for _ in vs]
        members = self.coloring.members
        adj = self.graph.adj
        assigned = set()
        work = 0
        for v, c in zip(vs, draw):
            m = members.get(c)
            nbrs = adj[v]
            if m is None:
                work += 1
            else:
                work += 1 + min(len(m), len(nbrs))
                if not m.isdisjoint(nbrs):
                    continue
            self.assign(v, c)
            assigned.add(v)
        self.work += work
        return assigned

    def refresh_sparse(self) -> set[int]:
        """One-shot refresh, then a feasible random color for every vertex that missed out."""
        self.since_refresh = 0
        self.stats["refreshes"] += 1
        assigned = self.one_shot_sparse_coloring()
        leftover = sorted(v for v, i in self.member.items() if i == SPARSE and v not in assigned)
        for v in leftover:
            self.assign(v, self.sample_feasible(v, self.sparse_cap))
        self.stats["one_shot_assigned"] += len(assigned)
        self.stats["one_shot_leftover"] += len(leftover)
        if self.track_surplus:
            self.surplus_log.append(self.surplus_sample())
        return assigned

    def surplus(self, v: int) -> int:
        """Neighbors minus distinct neighbor colors: blank colors beyond the degree guarantee."""
        chi = self.coloring.chi
        nbrs = self.graph.adj[v]
        return len(nbrs) - len({chi[w] for w in nbrs})

    def surplus_sample(self) -> SurplusSample:
        vs = [v for v, i in self.member.items() if i == SPARSE]
        vals = [self.surplus(v) for v in vs]
        return SurplusSample(
            delta=self.graph.delta,
            vertices=len(vs),
            with_surplus=sum(1 for s in vals if s >= 1),
            mean=sum(vals) / len(vals) if vals else 0.0,
        )

    # ---- decomposition and cliques -------------------------------------

    def recompute(self) -> Decomposition:
        self.since_recompute = 0
        self.stats["recomputes"] += 1
        g = self.graph
        dec = hss_decompose(g, self.epsilon)
        self.work += g.n + 2 * g.edge_count()
        if dec.fallback:
            self.stats["fallbacks"] += 1
        self.decomposition = dec
        self.member = dict(dec.membership)
        self.cliques = [set(cl) for cl in dec.cliques]
        self.partner.clear()
        for i in range(len(self.cliques)):
            self.color_dense_clique(i)
        return dec

    def clique_pairs(self, i: int) -> int:
        return sum(1 for x in self.cliques[i] if x in self.partner) // 2

    def classify_heavy_colors(self, i: int, theta: float | None = None) -> set[int]:
        th = self.theta if theta is None else theta
        members = self.cliques[i]
        self.work += sum(len(self.graph.adj[a]) for a in members)
        return heavy_colors(self.graph, self.coloring.chi, members, th * self.graph.delta)

    def color_dense_clique(self, i: int) -> bool:
        """Recolor clique ``i`` from scratch; on a Hall violation the clique is dissolved.

        Large cliques first try without their heavy colors.
        """
        members = self.cliques[i]
        if not members:
            return True
        k = self.palette_size
        chi = self.coloring.chi
        self.work += sum(len(self.graph.adj[x]) for x in members) + k * len(members)
        heavy = self.classify_heavy_colors(i) if len(members) >= k else set()
        plan = None
        for exclude in ([heavy, set()] if heavy else [set()]):
            try:
                plan = plan_clique_coloring(self.graph, chi, members, k, exclude)
                break
            except HallViolation:
                continue
        if plan is None:
            self.stats["hall_failures"] += 1
            self.dissolve(i)
            return False
        self.stats["clique_rebuilds"] += 1
        for x in members:
            self.partner.pop(x, None)
        for u, w, c in plan.pairs:
            self.assign(u, c)
            self.assign(w, c)
            self.partner[u] = w
            self.partner[w] = u
        for x, c in sorted(plan.singles.items()):
            self.assign(x, c)
        return True

    def dissolve(self, i: int) -> None:
        for x in self.cliques[i]:
            self.member[x] = SPARSE
            self.unmatch(x)
        self.cliques[i] = set()

    def _remaining_colors(self, members: set[int], exclude: set[int]) -> set[int]:
        chi = self.coloring.chi
        matched = {chi[x] for x in members if x in self.partner}
        return {c for c in range(1, self.palette_size + 1) if c not in matched and c not in exclude}

    def augmenting_path(
        self,
        v: int,
        i: int,
        exclude: set[int] | None = None,
        max_vertices: int | None = None,
    ) -> list[tuple[int, int]] | None:
        """Alternating path from ``v`` to a free color in the feasibility graph of clique ``i``.

        Returns the (vertex, new color) moves, or None. Unpaired clique
        members hold distinct colors; a color is usable by ``x`` when no
        neighbor of ``x`` outside the unpaired set holds it.
        """
        members = self.cliques[i]
        rem = {x for x in members if x not in self.partner}
        chi = self.coloring.chi
        colors = sorted(self._remaining_colors(members, exclude or set()))
        holder = {chi[x]: x for x in rem if x != v}
        adj = self.graph.adj
        coloring = self.coloring

        def usable(x: int, c: int) -> bool:
            if c == chi[x]:
                return False
            hs = coloring.holders(c)
            self.work += 1 + len(hs)
            mover = holder.get(c)
            nx = adj[x]
            return all(w == mover or w == v for w in hs if w in nx)

        parent_c: dict[int, int] = {}
        parent_v: dict[int, int] = {}
        depth = {v: 1}
        queue = [v]
        seen_c: set[int] = set()
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for c in colors:
                if c in seen_c or not usable(x, c):
                    continue
                seen_c.add(c)
                parent_c[c] = x
                y = holder.get(c)
                if y is None:
                    moves = []
                    while True:
                        xx = parent_c[c]
                        moves.append((xx, c))
                        if xx == v:
                            break
                        c = parent_v[xx]
                    return moves[::-1]
                if y in depth:
                    continue
                if max_vertices is not None and depth[x] + 1 > max_vertices:
                    continue
                depth[y] = depth[x] + 1
                parent_v[y] = c
                queue.append(y)
        return None

    def recolor_dense(self, v: int) -> None:
        i = self.member[v]
        members = self.cliques[i]
        k = self.palette_size
        self.stats["dense_recolors"] += 1
        large = len(members) >= k or self.clique_pairs(i) >= self.graph.delta / 10
        if large:
            heavy = self.classify_heavy_colors(i)
            path = self.augmenting_path(v, i, heavy)
            if path is None and heavy:
                path = self.augmenting_path(v, i)
            if path is not None:
                self.stats["augmenting_paths"] += 1
                self._apply(path)
                return
        else:
            chi = self.coloring.chi
            in_clique = {chi[x] for x in members if x != v}
            unused = [c for c in range(1, k + 1) if c not in in_clique]
            self.work += k + len(members)
            nbrs = self.graph.adj[v]
            if unused:
                for _ in range(self.dense_cap):
                    c = self.rng.choice(unused)
                    self.stats["dense_samples"] += 1
                    self.work += 1 + min(self.coloring.load(c), len(nbrs))
                    if self.coloring.is_free_at(c, nbrs):
                        self.assign(v, c)
                        return
            path = self.augmenting_path(v, i, max_vertices=3)
            if path is not None:
                self.stats["short_paths"] += 1
                self._apply(path)
                return
        if self.color_dense_clique(i):
            return
        self.recolor_sparse(v)

    def _apply(self, moves: list[tuple[int, int]]) -> None:
        for x, c in reversed(moves):
            self.assign(x, c)

    # ---- audits --------------------------------------------------------

    def check_color_load(self) -> int:
        return self.coloring.max_load()

    def check_invariants(self) -> list[str]:
        out = []
        load = self.coloring.max_load()
        if load > self.load_bound():
            out.append(f"max color load {load} above {self.load_bound():.2f}")
        chi = self.coloring.chi
        for u, w in self.partner.items():
            if self.partner.get(w) != u:
                out.append(f"pairing of {u} and {w} is one-sided")
            if w in self.graph.adj[u]:
                out.append(f"paired vertices {u} and {w} are adjacent")
            if chi[u] != chi[w]:
                out.append(f"paired vertices {u} and {w} hold different colors")
        return out
