"""Matchings used by the dense-clique colorer.

* a greedy maximal matching on the non-edges of a vertex set;
* maximum bipartite matching by augmenting paths, which on failure to be
  perfect returns a Hall violator: a left set with fewer neighbors than
  members.
"""
from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence


class HallViolation(ValueError):
    """No left-perfect matching exists; ``witness`` has only ``neighborhood`` as neighbors."""

    def __init__(self, witness: Iterable[int], neighborhood: Iterable[int]) -> None:
        self.witness = tuple(sorted(witness))
        self.neighborhood = tuple(sorted(neighborhood))
        super().__init__(
            f"Hall violation: {len(self.witness)} vertices {list(self.witness)} "
            f"see only {len(self.neighborhood)} colors {list(self.neighborhood)}"
        )


def greedy_non_edge_matching(
    vertices: Iterable[int],
    adjacent: Callable[[int, int], bool],
    accept: Callable[[int, int], bool] | None = None,
) -> list[tuple[int, int]]:
    """Maximal matching on non-adjacent pairs, scanning ids in ascending order.

    ``accept`` can veto a pair (for instance when no shared color fits it).
    """
    vs = sorted(vertices)
    used: set[int] = set()
    out: list[tuple[int, int]] = []
    for i, u in enumerate(vs):
        if u in used:
            continue
        for w in vs[i + 1 :]:
            if w in used or adjacent(u, w):
                continue
            if accept is not None and not accept(u, w):
                continue
            used.add(u)
            used.add(w)
            out.append((u, w))
            break
    return out


def _augment(
    u: int,
    adj: Mapping[int, Sequence[int]],
    match_r: dict[int, int],
    seen: set[int],
) -> bool:
    """Iterative augmenting-path search from left vertex ``u``."""
    # stack of (left vertex, index of next right candidate)
    stack: list[list[int]] = [[u, 0]]
    path: list[tuple[int, int]] = []
    while stack:
        top = stack[-1]
        x, i = top
        nbrs = adj.get(x, ())
        advanced = False
        while i < len(nbrs):
            r = nbrs[i]
            i += 1
            if r in seen:
                continue
            seen.add(r)
            top[1] = i
            owner = match_r.get(r)
            if owner is None:
                path.append((x, r))
                for lx, rr in path:
                    match_r[rr] = lx
                return True
            path.append((x, r))
            stack.append([owner, 0])
            advanced = True
            break
        if not advanced:
            top[1] = i
            stack.pop()
            if path:
                path.pop()
    return False


def max_bipartite_matching(
    left: Sequence[int],
    adj: Mapping[int, Sequence[int]],
) -> dict[int, int]:
    """Maximum matching, left vertex -> right vertex.

    ``adj`` maps each left vertex to its right neighbors; neighbors are tried
    in the given order, so the result is deterministic.
    """
    match_r: dict[int, int] = {}
    for u in left:
        _augment(u, adj, match_r, set())
    return {lx: r for r, lx in match_r.items()}


def perfect_matching(
    left: Sequence[int],
    adj: Mapping[int, Sequence[int]],
) -> dict[int, int]:
    """Left-perfect matching or :class:`HallViolation` with a witness set."""
    match_r: dict[int, int] = {}
    for u in left:
        if not _augment(u, adj, match_r, set()):
            witness, nbhd = _hall_witness(u, adj, match_r)
            raise HallViolation(witness, nbhd)
    return {lx: r for r, lx in match_r.items()}


def _hall_witness(
    u: int,
    adj: Mapping[int, Sequence[int]],
    match_r: dict[int, int],
) -> tuple[set[int], set[int]]:
    """Left and right vertices reachable from the exposed ``u`` by alternating paths.

    Every reachable right vertex is matched back into the reachable left set,
    so the right side has exactly one vertex fewer than the left.
    """
    left = {u}
    right: set[int] = set()
    frontier = [u]
    while frontier:
        x = frontier.pop()
        for r in adj.get(x, ()):
            if r in right:
                continue
            right.add(r)
            owner = match_r[r]
            if owner not in left:
                left.add(owner)
                frontier.append(owner)
    return left, right


def is_hall_violator(
    witness: Iterable[int],
    adj: Mapping[int, Sequence[int]],
) -> bool:
    ws = set(witness)
    nbhd: set[int] = set()
    for x in ws:
        nbhd.update(adj.get(x, ()))
    return len(nbhd) < len(ws)
