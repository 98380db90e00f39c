"""Update streams: text format, oblivious generators and the adaptive conflict adversary.

Text format, one event per line, ``#`` starts a comment::

    # dyncolor-stream n0=200 seed=7
    +e 0 1
    -e 0 1
    +v 200 3 17
    -v 5

The optional header fixes the initial order (vertices ``0..n0-1`` start
isolated) and the generator seed. Without it, every id that appears in an
event before any ``+v`` of that id is taken to be initially live.
"""
from __future__ import annotations

import enum
import random
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .graph import DynamicGraph, InvalidUpdate, Kind, UpdateEvent

HEADER_RE = re.compile(r"#\s*dyncolor-stream\s+n0=(\d+)\s+seed=(-?\d+)\s*$")
_TOKEN_RE = re.compile(r"0|[1-9][0-9]*")


class StreamError(ValueError):
    """Malformed or invalid stream; ``line`` or ``index`` locate the problem."""

    def __init__(self, msg: str, line: int | None = None, index: int | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if index is not None:
            where.append(f"event {index}")
        super().__init__(f"{', '.join(where)}: {msg}" if where else msg)
        self.line = line
        self.index = index


class GraphComplete(RuntimeError):
    """No non-edge is left to insert."""


@dataclass
class UpdateStream:
    events: list[UpdateEvent]
    n0: int = 0
    seed: int = 0
    n_max: int = 0
    diagnostics: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UpdateStream):
            return NotImplemented
        return (self.events, self.n0, self.seed, self.n_max) == (
            other.events,
            other.n0,
            other.seed,
            other.n_max,
        )


class AdversaryKind(str, enum.Enum):
    OBLIVIOUS = "oblivious"
    ADAPTIVE = "adaptive-conflict"


@dataclass(frozen=True)
class AdversarySpec:
    kind: AdversaryKind
    n: int
    t: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"adversary needs n >= 2, got {self.n}")
        if self.t < 0:
            raise ValueError(f"adversary needs t >= 0, got {self.t}")


# ---- serialization -------------------------------------------------------


def serialize_stream(s: UpdateStream) -> str:
    lines = [f"# dyncolor-stream n0={s.n0} seed={s.seed}"]
    lines.extend(e.to_line() for e in s.events)
    return "\n".join(lines) + "\n"


def _ids(tokens: list[str], lineno: int) -> list[int]:
    for tok in tokens:
        if not _TOKEN_RE.fullmatch(tok):
            raise StreamError(f"bad vertex id {tok!r}", line=lineno)
    return [int(tok) for tok in tokens]


def _parse_line(line: str, lineno: int) -> UpdateEvent:
    parts = line.split(" ")
    op, args = parts[0], parts[1:]
    if any(not p for p in args):
        raise StreamError("fields must be separated by single spaces", line=lineno)
    ids = _ids(args, lineno)
    if op in ("+e", "-e"):
        if len(ids) != 2:
            raise StreamError(f"{op} takes two vertex ids, got {len(ids)}", line=lineno)
        if ids[0] == ids[1]:
            raise StreamError(f"self-loop at vertex {ids[0]}", line=lineno)
        return UpdateEvent(Kind(op), ids[0], ids[1])
    if op == "+v":
        if not ids:
            raise StreamError("+v needs a vertex id", line=lineno)
        return UpdateEvent.vertex_insert(ids[0], ids[1:])
    if op == "-v":
        if len(ids) != 1:
            raise StreamError(f"-v takes one vertex id, got {len(ids)}", line=lineno)
        return UpdateEvent.vertex_delete(ids[0])
    raise StreamError(f"unknown operation {op!r}", line=lineno)


def parse_stream(text: str, validate: bool = True) -> UpdateStream:
    """Parse the text format; with ``validate`` replay the events and report the first invalid one."""
    events: list[UpdateEvent] = []
    n0: int | None = None
    seed = 0
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if raw.endswith("\r"):
            raise StreamError("CR line endings are not allowed", line=lineno)
        if not raw.strip():
            continue
        if raw.startswith("#"):
            m = HEADER_RE.match(raw)
            if m and not events and n0 is None:
                n0, seed = int(m.group(1)), int(m.group(2))
            continue
        events.append(_parse_line(raw, lineno))
    if n0 is None:
        n0 = _implicit_order(events)
    s = UpdateStream(events, n0=n0, seed=seed)
    s.n_max = replay(s) if validate else max(n0, _implicit_order(events))
    return s


def _implicit_order(events: Iterable[UpdateEvent]) -> int:
    inserted: set[int] = set()
    top = -1
    for e in events:
        if e.kind is Kind.VERTEX_INSERT:
            ids = e.nbrs
        elif e.kind is Kind.VERTEX_DELETE:
            ids = (e.u,)
        else:
            ids = (e.u, e.v)
        for x in ids:
            if x not in inserted and x > top:
                top = x
        if e.kind is Kind.VERTEX_INSERT:
            inserted.add(e.u)
    return top + 1


def replay(s: UpdateStream) -> int:
    """Apply every event to a fresh graph; returns the largest order reached."""
    g = DynamicGraph(s.n0)
    for i, e in enumerate(s.events):
        try:
            g.apply(e)
        except InvalidUpdate as exc:
            raise StreamError(str(exc), index=i) from exc
    return g.n_max


# ---- oblivious generators ------------------------------------------------


class _NonEdgeSampler:
    """Uniform sampling from the non-edges of a graph on ``0..n-1``.

    Rejection sampling while the graph is sparse; once more than half of
    all pairs are edges it switches to an explicit non-edge list.
    """

    def __init__(self, n: int, rng: random.Random, edges: set[tuple[int, int]] | None = None) -> None:
        self.n = n
        self.rng = rng
        self.edges: set[tuple[int, int]] = edges if edges is not None else set()
        self.pairs = n * (n - 1) // 2
        self.pool: list[tuple[int, int]] | None = None
        self.index: dict[tuple[int, int], int] = {}

    def _build_pool(self) -> None:
        n = self.n
        self.pool = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in self.edges]
        self.index = {p: i for i, p in enumerate(self.pool)}

    def sample(self) -> tuple[int, int]:
        if len(self.edges) >= self.pairs:
            raise GraphComplete(f"all {self.pairs} pairs are edges")
        if self.pool is None and 2 * len(self.edges) > self.pairs:
            self._build_pool()
        if self.pool is None:
            n, rng = self.n, self.rng
            while True:
                u, v = rng.randrange(n), rng.randrange(n)
                if u == v:
                    continue
                p = (u, v) if u < v else (v, u)
                if p not in self.edges:
                    return p
        return self.pool[self.rng.randrange(len(self.pool))]

    def add(self, p: tuple[int, int]) -> None:
        self.edges.add(p)
        if self.pool is not None:
            i = self.index.pop(p)
            last = self.pool.pop()
            if i < len(self.pool):
                self.pool[i] = last
                self.index[last] = i

    def remove(self, p: tuple[int, int]) -> None:
        self.edges.discard(p)
        if self.pool is not None:
            self.index[p] = len(self.pool)
            self.pool.append(p)


def gen_oblivious_stream(n: int, t: int, seed: int = 0) -> UpdateStream:
    """``t`` edge insertions on ``n`` initially isolated vertices, each uniform over the current non-edges.

    If the graph becomes complete first, the stream is cut short and a
    diagnostic is recorded.
    """
    AdversarySpec(AdversaryKind.OBLIVIOUS, n, t, seed)
    rng = random.Random(seed)
    sampler = _NonEdgeSampler(n, rng)
    events: list[UpdateEvent] = []
    diags: list[str] = []
    for i in range(t):
        try:
            p = sampler.sample()
        except GraphComplete:
            diags.append(f"graph complete after {i} insertions; stream truncated from {t}")
            break
        sampler.add(p)
        events.append(UpdateEvent.edge_insert(*p))
    return UpdateStream(events, n0=n, seed=seed, n_max=n, diagnostics=diags)


def gen_flip_stream(n: int, t: int, seed: int = 0, max_degree: int = 16) -> UpdateStream:
    """``t`` fully dynamic updates with every degree capped at ``max_degree``.

    Each step draws a uniform vertex pair: an existing edge is deleted, a
    non-edge is inserted if both endpoints are below the cap, otherwise the
    pair is redrawn. This keeps ``Delta`` fixed while ``t`` grows without
    bound.
    """
    AdversarySpec(AdversaryKind.OBLIVIOUS, n, t, seed)
    if max_degree < 1:
        raise ValueError(f"max_degree must be >= 1, got {max_degree}")
    rng = random.Random(seed)
    deg = [0] * n
    edges: set[tuple[int, int]] = set()
    events: list[UpdateEvent] = []
    while len(events) < t:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        p = (u, v) if u < v else (v, u)
        if p in edges:
            edges.discard(p)
            deg[u] -= 1
            deg[v] -= 1
            events.append(UpdateEvent.edge_delete(*p))
        elif deg[u] < max_degree and deg[v] < max_degree:
            edges.add(p)
            deg[u] += 1
            deg[v] += 1
            events.append(UpdateEvent.edge_insert(*p))
    return UpdateStream(events, n0=n, seed=seed, n_max=n)


def gen_vertex_stream(n: int, k: int = 3, seed: int = 0) -> UpdateStream:
    """Insert vertices ``0..n-1`` one at a time, each joined to ``min(k, v)`` random earlier vertices."""
    rng = random.Random(seed)
    events = [UpdateEvent.vertex_insert(v, sorted(rng.sample(range(v), min(k, v)))) for v in range(n)]
    return UpdateStream(events, n0=0, seed=seed, n_max=n)


# ---- adaptive adversary --------------------------------------------------


class AdaptiveConflict:
    """Inserts an edge between two vertices that currently share a color.

    Looks only at the public coloring. A color class of size ``s`` is picked
    with weight ``s*(s-1)/2`` and a pair inside it at random; adjacent pairs
    are redrawn a few times before an exhaustive scan. With no
    monochromatic non-edge left it inserts a uniform non-edge.
    """

    TRIES = 32

    def __init__(self, seed: int = 0) -> None:
        self.rng = random.Random(seed)
        self.seed = seed
        self.emitted = 0
        self.monochromatic = 0

    def step(self, g: DynamicGraph, members: Mapping[int, set[int]]) -> UpdateEvent:
        rng = self.rng
        classes = [(c, sorted(m)) for c, m in sorted(members.items()) if len(m) >= 2]
        e = None
        if classes:
            weights = [len(m) * (len(m) - 1) // 2 for _, m in classes]
            for _ in range(self.TRIES):
                _, m = rng.choices(classes, weights=weights)[0]
                u, v = rng.sample(m, 2)
                if not g.has_edge(u, v):
                    e = (u, v)
                    break
            if e is None:
                pairs = [
                    (u, v)
                    for _, m in classes
                    for i, u in enumerate(m)
                    for v in m[i + 1 :]
                    if not g.has_edge(u, v)
                ]
                if pairs:
                    e = rng.choice(pairs)
        self.emitted += 1
        if e is not None:
            self.monochromatic += 1
            u, v = e
            return UpdateEvent.edge_insert(min(u, v), max(u, v))
        return UpdateEvent.edge_insert(*self._uniform_non_edge(g))

    def _uniform_non_edge(self, g: DynamicGraph) -> tuple[int, int]:
        vs = sorted(g.adj)
        n = len(vs)
        rng = self.rng
        for _ in range(self.TRIES):
            u, v = rng.sample(vs, 2) if n >= 2 else (0, 0)
            if u != v and not g.has_edge(u, v):
                return (min(u, v), max(u, v))
        pool = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :] if not g.has_edge(u, v)]
        if not pool:
            raise GraphComplete("no non-edge left for the adversary")
        return rng.choice(pool)

