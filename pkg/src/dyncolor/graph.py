"""Dynamic undirected graph, update events and the shared coloring record.

Every colorer in the package owns one :class:`DynamicGraph` and one
:class:`Coloring`. The graph validates updates and tracks the running
maximum degree; the coloring keeps a per-color member index so that load
queries and "is color c free at v" checks cost O(load(c)).
"""
from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field


class InvalidUpdate(ValueError):
    """An update that would break the graph invariants; the graph is left unchanged."""


class Kind(str, enum.Enum):
    EDGE_INSERT = "+e"
    EDGE_DELETE = "-e"
    VERTEX_INSERT = "+v"
    VERTEX_DELETE = "-v"


@dataclass(frozen=True)
class UpdateEvent:
    kind: Kind
    u: int
    v: int | None = None
    nbrs: tuple[int, ...] = ()

    @classmethod
    def edge_insert(cls, u: int, v: int) -> UpdateEvent:
        return cls(Kind.EDGE_INSERT, u, v)

    @classmethod
    def edge_delete(cls, u: int, v: int) -> UpdateEvent:
        return cls(Kind.EDGE_DELETE, u, v)

    @classmethod
    def vertex_insert(cls, v: int, nbrs: Iterable[int] = ()) -> UpdateEvent:
        return cls(Kind.VERTEX_INSERT, v, None, tuple(nbrs))

    @classmethod
    def vertex_delete(cls, v: int) -> UpdateEvent:
        return cls(Kind.VERTEX_DELETE, v)

    @property
    def is_insertion(self) -> bool:
        return self.kind in (Kind.EDGE_INSERT, Kind.VERTEX_INSERT)

    def to_line(self) -> str:
        if self.kind in (Kind.EDGE_INSERT, Kind.EDGE_DELETE):
            return f"{self.kind.value} {self.u} {self.v}"
        if self.kind is Kind.VERTEX_INSERT:
            return " ".join([self.kind.value, str(self.u), *map(str, self.nbrs)])
        return f"{self.kind.value} {self.u}"


@dataclass(frozen=True)
class UpdateOutcome:
    event: UpdateEvent
    # Only insertions can make a proper coloring improper.
    may_corrupt: bool
    delta_changed: bool


class DynamicGraph:
    """Simple undirected graph under edge and vertex updates.

    ``delta`` is the running maximum degree over the whole update history,
    never the current maximum degree.

    With ``lazy_deletions=True`` an edge deletion is only recorded; the edge
    stays in the adjacency (and keeps counting towards degrees) until one of
    its endpoints is deleted.
    """

    def __init__(self, n: int = 0, lazy_deletions: bool = False) -> None:
        self.adj: dict[int, set[int]] = {v: set() for v in range(n)}
        self.delta = 0
        self.timestamp = 0
        self.n_max = n
        self.lazy_deletions = lazy_deletions
        self.pending_deletions: set[tuple[int, int]] = set()

    # ---- queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.adj)

    def __contains__(self, v: int) -> bool:
        return v in self.adj

    def vertices(self) -> Iterator[int]:
        return iter(self.adj)

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        """Logical edge test; lazily deleted edges do not count."""
        nu = self.adj.get(u)
        if nu is None or v not in nu:
            return False
        return not self.pending_deletions or _key(u, v) not in self.pending_deletions

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nu in self.adj.items():
            for v in nu:
                if u < v and (u, v) not in self.pending_deletions:
                    yield u, v

    def edge_count(self) -> int:
        return sum(len(nu) for nu in self.adj.values()) // 2 - len(self.pending_deletions)

    def max_degree(self) -> int:
        return max((len(nu) for nu in self.adj.values()), default=0)

    def copy(self) -> DynamicGraph:
        g = DynamicGraph(0, self.lazy_deletions)
        g.adj = {v: set(nu) for v, nu in self.adj.items()}
        g.delta = self.delta
        g.timestamp = self.timestamp
        g.n_max = self.n_max
        g.pending_deletions = set(self.pending_deletions)
        return g

    # ---- validation ----------------------------------------------------

    def validate(self, e: UpdateEvent) -> None:
        adj = self.adj
        if e.kind is Kind.EDGE_INSERT or e.kind is Kind.EDGE_DELETE:
            u, v = e.u, e.v
            if v is None:
                raise InvalidUpdate(f"{e.kind.value}: missing second endpoint")
            if u == v:
                raise InvalidUpdate(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise InvalidUpdate(f"unknown vertex in edge ({u}, {v})")
            if e.kind is Kind.EDGE_INSERT:
                if self.has_edge(u, v):
                    raise InvalidUpdate(f"duplicate edge ({u}, {v})")
            elif not self.has_edge(u, v):
                raise InvalidUpdate(f"edge ({u}, {v}) is not present")
        elif e.kind is Kind.VERTEX_INSERT:
            if e.u < 0:
                raise InvalidUpdate(f"negative vertex id {e.u}")
            if e.u in adj:
                raise InvalidUpdate(f"vertex {e.u} is already live")
            seen = set()
            for w in e.nbrs:
                if w == e.u:
                    raise InvalidUpdate(f"self-loop at vertex {w}")
                if w not in adj:
                    raise InvalidUpdate(f"unknown neighbor {w} of inserted vertex {e.u}")
                if w in seen:
                    raise InvalidUpdate(f"repeated neighbor {w} of inserted vertex {e.u}")
                seen.add(w)
        elif e.u not in adj:
            raise InvalidUpdate(f"unknown vertex {e.u}")

    # ---- mutation ------------------------------------------------------

    def apply(self, e: UpdateEvent) -> UpdateOutcome:
        """Validate and apply one update."""
        self.validate(e)
        old_delta = self.delta
        kind = e.kind
        if kind is Kind.EDGE_INSERT:
            key = _key(e.u, e.v)
            if key in self.pending_deletions:
                # Re-inserting a lazily deleted edge: it never left the adjacency.
                self.pending_deletions.discard(key)
            else:
                self._link(e.u, e.v)
        elif kind is Kind.EDGE_DELETE:
            if self.lazy_deletions:
                self.pending_deletions.add(_key(e.u, e.v))
            else:
                self._unlink(e.u, e.v)
        elif kind is Kind.VERTEX_INSERT:
            self.adj[e.u] = set()
            for w in e.nbrs:
                self._link(e.u, w)
            self.n_max = max(self.n_max, len(self.adj))
        else:
            self._drop_vertex(e.u)
        self.timestamp += 1
        return UpdateOutcome(e, e.is_insertion, self.delta != old_delta)

    def add_vertex(self, v: int) -> None:
        self.apply(UpdateEvent.vertex_insert(v))

    def add_edge(self, u: int, v: int) -> None:
        self.apply(UpdateEvent.edge_insert(u, v))

    def remove_edge(self, u: int, v: int) -> None:
        self.apply(UpdateEvent.edge_delete(u, v))

    def remove_vertex(self, v: int) -> None:
        self.apply(UpdateEvent.vertex_delete(v))

    def _link(self, u: int, v: int) -> None:
        nu = self.adj[u]
        nv = self.adj[v]
        nu.add(v)
        nv.add(u)
        d = len(nu) if len(nu) > len(nv) else len(nv)
        if d > self.delta:
            self.delta = d

    def _unlink(self, u: int, v: int) -> None:
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def _drop_vertex(self, v: int) -> None:
        for w in self.adj.pop(v):
            self.adj[w].discard(v)
            self.pending_deletions.discard(_key(v, w))


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def simulate_edge_insert_as_vertex_ops(g: DynamicGraph, u: int, v: int) -> list[UpdateEvent]:
    """Express the insertion of edge (u, v) as delete-u, re-insert-u.

    The re-inserted vertex gets its old neighborhood plus ``v``.
    """
    if u not in g or v not in g:
        raise InvalidUpdate(f"unknown vertex in edge ({u}, {v})")
    if u == v:
        raise InvalidUpdate(f"self-loop at vertex {u}")
    if g.has_edge(u, v):
        raise InvalidUpdate(f"duplicate edge ({u}, {v})")
    nbrs = sorted(w for w in g.adj[u] if g.has_edge(u, w))
    nbrs.append(v)
    nbrs.sort()
    return [UpdateEvent.vertex_delete(u), UpdateEvent.vertex_insert(u, nbrs)]


def verify_adjacency(g: DynamicGraph) -> bool:
    """True iff the adjacency is symmetric, loop-free and the degree bound holds."""
    for u, nu in g.adj.items():
        if u in nu:
            return False
        for w in nu:
            peer = g.adj.get(w)
            if peer is None or u not in peer:
                return False
        if len(nu) > g.delta:
            return False
    return True


class Coloring:
    """Vertex to color map with a per-color member index.

    ``changed`` is a write log: every :meth:`set` appends the vertex. The
    experiment runner drains it to re-check only the edges that could have
    become monochromatic.
    """

    def __init__(self) -> None:
        self.chi: dict[int, int] = {}
        self.members: dict[int, set[int]] = {}
        self.changed: list[int] = []
        self.max_color_seen = 0

    def __contains__(self, v: int) -> bool:
        return v in self.chi

    def __getitem__(self, v: int) -> int:
        return self.chi[v]

    def __len__(self) -> int:
        return len(self.chi)

    def get(self, v: int, default: int | None = None) -> int | None:
        return self.chi.get(v, default)

    def set(self, v: int, c: int) -> None:
        old = self.chi.get(v)
        if old == c:
            self.changed.append(v)
            return
        if old is not None:
            bucket = self.members[old]
            bucket.discard(v)
            if not bucket:
                del self.members[old]
        self.chi[v] = c
        m = self.members.get(c)
        if m is None:
            self.members[c] = {v}
        else:
            m.add(v)
        if c > self.max_color_seen:
            self.max_color_seen = c
        self.changed.append(v)

    def remove(self, v: int) -> None:
        c = self.chi.pop(v, None)
        if c is not None:
            bucket = self.members[c]
            bucket.discard(v)
            if not bucket:
                del self.members[c]

    def holders(self, c: int) -> set[int]:
        return self.members.get(c, _EMPTY)

    def load(self, c: int) -> int:
        return len(self.members.get(c, _EMPTY))

    def loads(self) -> dict[int, int]:
        return {c: len(m) for c, m in self.members.items()}

    def max_load(self) -> int:
        return max((len(m) for m in self.members.values()), default=0)

    def colors_used(self) -> int:
        return len(self.members)

    def max_color(self) -> int:
        return max(self.members, default=0)

    def recount(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.chi.values():
            out[c] = out.get(c, 0) + 1
        return out

    def load_consistent(self) -> bool:
        return self.recount() == self.loads()

    def is_free_at(self, c: int, nbrs: set[int]) -> bool:
        """True iff no vertex in ``nbrs`` holds color ``c``."""
        m = self.members.get(c)
        return m is None or m.isdisjoint(nbrs)

    def drain_changes(self) -> list[int]:
        out = self.changed
        self.changed = []
        return out

    def as_dict(self) -> dict[int, int]:
        return dict(self.chi)


_EMPTY: frozenset = frozenset()  # type: ignore[type-arg]


@dataclass
class RecolorReport:
    """What one update cost a colorer."""

    recolored: list[int] = field(default_factory=list)
    chains: list[int] = field(default_factory=list)
    work: int = 0

    def __len__(self) -> int:
        return len(self.recolored)
