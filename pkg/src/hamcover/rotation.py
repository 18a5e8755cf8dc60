"""Rotation-extension machinery with protected edges, and a Hamilton cycle
search built on it.

A rotation takes a path (v1 ... vq) with a chord (vq, vi), 1 <= i <= q-2,
to the path (v1 ... vi vq v(q-1) ... v(i+1)): the edge (vi, v(i+1)) is
broken, the suffix is reversed, and v(i+1) becomes the new endpoint. The
vertex set and the number of edges never change.

Constraints carry two edge sets: a locked set that no rotation or
absorption may ever break, and a soft set that is broken only when no clean
alternative exists, with every such break counted. Searches explore the
rotation tree breadth-first with pivots in ascending vertex order, so every
outcome is deterministic for a given graph and seed path.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field

from .graph import (
    Edge,
    Graph,
    edge_key,
    is_hamilton_cycle,
    is_path,
    mask_of,
    path_edges,
)

log = logging.getLogger(__name__)

# hard ceiling on paths explored per rotate_until_extendable call
SEARCH_NODE_CAP = 6000


class RotationError(ValueError):
    """Illegal rotation request (bad pivot, missing chord, locked edge)."""


@dataclass
class RotationConstraints:
    """Edge protection for rotation searches.

    ``locked`` edges are never broken; ``soft`` edges (a superset of locked)
    are broken only when no alternative rotation exists, and every such
    break increments ``soft_breaks``. ``rotations`` and ``absorptions``
    count every edge-breaking move (exploration included), so
    soft_breaks <= rotations + absorptions always holds.
    """

    locked: frozenset[Edge] = frozenset()
    soft: frozenset[Edge] = frozenset()
    rotations: int = 0
    absorptions: int = 0
    soft_breaks: int = 0

    def __post_init__(self) -> None:
        self.locked = frozenset(edge_key(*e) for e in self.locked)
        self.soft = frozenset(edge_key(*e) for e in self.soft) | self.locked

    def record(self, broken: Edge) -> None:
        if broken in self.locked:
            raise RotationError(f"attempt to break locked edge {broken}")
        self.rotations += 1
        if broken in self.soft:
            self.soft_breaks += 1

    def record_absorption(self, dropped: Edge) -> None:
        if dropped in self.locked:
            raise RotationError(f"attempt to drop locked edge {dropped}")
        self.absorptions += 1
        if dropped in self.soft:
            self.soft_breaks += 1


@dataclass
class RotationState:
    """A path under rotation with its audit trail."""

    path: list[int]
    fixed_endpoint: int
    rotation_count: int = 0
    history: list[tuple[int, Edge]] = field(default_factory=list)  # (pivot, broken edge)


def rotate(G: Graph, state: RotationState, pivot: int,
           constraints: RotationConstraints | None = None) -> RotationState:
    """One rotation of ``state`` around ``pivot``, returning a new state.

    Requires the current endpoint to be adjacent to the pivot, the pivot to
    sit strictly before the last two positions, and the broken edge to be
    unlocked.
    """
    if constraints is None:
        constraints = RotationConstraints()
    path = state.path
    q = len(path)
    if path[0] != state.fixed_endpoint:
        raise RotationError("state path does not start at its fixed endpoint")
    try:
        i = path.index(pivot)
    except ValueError:
        raise RotationError(f"pivot {pivot} not on the path") from None
    if i > q - 3:
        raise RotationError(f"pivot position {i} out of range (need <= {q - 3})")
    if not G.has_edge(path[-1], pivot):
        raise RotationError(f"pivot {pivot} not adjacent to endpoint {path[-1]}")
    broken = edge_key(pivot, path[i + 1])
    if broken in constraints.locked:
        raise RotationError(f"broken edge {broken} is locked")
    constraints.record(broken)
    new_path = path[: i + 1] + path[i + 1 :][::-1]
    return RotationState(
        path=new_path,
        fixed_endpoint=state.fixed_endpoint,
        rotation_count=state.rotation_count + 1,
        history=state.history + [(pivot, broken)],
    )


def _rotation_bfs(G, path0: list[int], constraints: RotationConstraints,
                  max_depth: int):
    """Breadth-first walk of the rotation tree with fixed endpoint path0[0].

    Yields (path, pivots) once per distinct non-fixed endpoint, the seed
    path included, never breaking a locked edge. Within one expansion,
    rotations that keep soft edges intact come first. Explores to depth
    ``max_depth``; callers stop consuming when they have enough endpoints.
    """
    locked = constraints.locked
    soft = constraints.soft
    q = len(path0)
    yield path0, ()
    if q < 3 or max_depth <= 0:
        return
    seen = {path0[-1]}
    queue = deque([(path0, (), 0)])
    while queue:
        path, pivots, depth = queue.popleft()
        if depth >= max_depth:
            continue
        pos = {v: i for i, v in enumerate(path)}
        end = path[-1]
        fresh = []
        for soft_pass in (False, True):
            for w in G.neighbors(end):
                i = pos.get(w)
                if i is None or i > q - 3:
                    continue
                nxt = path[i + 1]
                if nxt in seen:
                    continue
                broken = edge_key(w, nxt)
                if broken in locked:
                    continue
                if (broken in soft) != soft_pass:
                    continue
                seen.add(nxt)
                constraints.record(broken)
                new_path = path[: i + 1] + path[i + 1 :][::-1]
                fresh.append((new_path, pivots + (w,)))
        for item in fresh:
            yield item
            queue.append((item[0], item[1], depth + 1))


@dataclass
class EndpointSet:
    """Endpoints reachable by locked-respecting rotations with one end fixed.

    ``pivots`` maps each endpoint to the pivot sequence that reaches it;
    replaying those pivots through rotate() reproduces ``paths[endpoint]``.
    """

    fixed: int
    endpoints: set[int]
    pivots: dict[int, tuple[int, ...]]
    paths: dict[int, tuple[int, ...]]
    external: int | None = None    # endpoint with a neighbor off the path, if found
    depth: int = 0


def default_rotation_depth(n: int, s: float | None = None) -> int:
    """ceil(3*ln(n)/ln(s)) when the expansion factor is meaningful (s >= 21),
    otherwise n: the logarithmic budget is vacuous for small factors."""
    if s is not None and s >= 21.0:
        return max(1, math.ceil(3.0 * math.log(max(n, 2)) / math.log(s)))
    return n


def endpoint_set(G: Graph, path: list[int] | tuple[int, ...], fixed: int,
                 constraints: RotationConstraints | None = None,
                 max_depth: int | None = None,
                 endpoint_cap: int | None = None) -> EndpointSet:
    """All endpoints reachable from ``path`` by at most ``max_depth``
    rotations fixing ``fixed``, deduplicated.

    Stops early once an endpoint has a neighbor outside the path's vertex
    set (flagged in ``external``) or once ``endpoint_cap`` endpoints are
    known (default ceil(n/3), the scale the expansion guarantees; pass
    G.n for exhaustive enumeration).
    """
    if constraints is None:
        constraints = RotationConstraints()
    p = list(path)
    if p and p[-1] == fixed:
        p = p[::-1]
    if not p or p[0] != fixed:
        raise RotationError(f"{fixed} is not an endpoint of the path")
    if max_depth is None:
        max_depth = G.n
    cap = endpoint_cap if endpoint_cap is not None else max(1, math.ceil(G.n / 3))
    outside = G.full_mask() & ~mask_of(p)
    out = EndpointSet(fixed=fixed, endpoints=set(), pivots={}, paths={})
    for walked, pivots in _rotation_bfs(G, p, constraints, max_depth):
        e = walked[-1]
        out.endpoints.add(e)
        out.pivots[e] = pivots
        out.paths[e] = tuple(walked)
        out.depth = max(out.depth, len(pivots))
        if G.adjacency_bits(e) & outside:
            out.external = e
            break
        if len(out.endpoints) >= cap:
            break
    return out


@dataclass(frozen=True)
class ExtendAt:
    """A same-vertex-set path whose endpoint can step off the path."""
    path: tuple[int, ...]
    endpoint: int
    external: int


@dataclass(frozen=True)
class Chord:
    """A same-vertex-set path whose two endpoints are adjacent."""
    path: tuple[int, ...]
    ends: tuple[int, int]


@dataclass(frozen=True)
class Stuck:
    """Two-level rotation search exhausted with no extension and no chord."""
    level_one: int
    level_two: int
    explored: int
    message: str = ""


def _external_neighbor(G: Graph, v: int, outside: int) -> int | None:
    hit = G.adjacency_bits(v) & outside
    if hit:
        return (hit & -hit).bit_length() - 1
    return None


def rotate_until_extendable(G: Graph, path: list[int] | tuple[int, ...],
                            constraints: RotationConstraints | None = None,
                            max_depth: int | None = None):
    """Two-level rotation search respecting locked edges.

    Rotates the seed path from one endpoint and then, for each resulting
    path, from the other. Returns ExtendAt for the first path found whose
    endpoint has a neighbor outside the (invariant) vertex set, else a
    Chord whose endpoints are adjacent, else Stuck. Locked edges of the
    seed survive into whichever path is returned.
    """
    if constraints is None:
        constraints = RotationConstraints()
    p0 = list(path)
    if len(p0) < 2:
        raise RotationError("path must be non-trivial (at least 2 vertices)")
    if max_depth is None:
        max_depth = G.n
    full = G.full_mask()
    outside = full & ~mask_of(p0)

    ext = _external_neighbor(G, p0[-1], outside)
    if ext is not None:
        return ExtendAt(path=tuple(p0), endpoint=p0[-1], external=ext)
    ext = _external_neighbor(G, p0[0], outside)
    if ext is not None:
        return ExtendAt(path=tuple(p0[::-1]), endpoint=p0[0], external=ext)

    chord: Chord | None = None
    if G.has_edge(p0[0], p0[-1]):
        chord = Chord(path=tuple(p0), ends=(p0[0], p0[-1]))
        if not outside:
            return chord

    explored = 0
    level_one: list[tuple[int, ...]] = []
    for walked, _ in _rotation_bfs(G, p0, constraints, max_depth):
        explored += 1
        e = walked[-1]
        ext = _external_neighbor(G, e, outside)
        if ext is not None:
            return ExtendAt(path=tuple(walked), endpoint=e, external=ext)
        if chord is None and G.has_edge(p0[0], e):
            chord = Chord(path=tuple(walked), ends=(p0[0], e))
            if not outside:
                return chord
        level_one.append(tuple(walked))
        if explored >= SEARCH_NODE_CAP:
            return chord or Stuck(len(level_one), 0, explored, "node budget exhausted")

    level_two_seen = 0
    for first in level_one:
        flipped = list(first[::-1])  # fix the new endpoint, rotate the old fixed end
        for walked, pivots in _rotation_bfs(G, flipped, constraints, max_depth):
            if not pivots:
                continue  # the unrotated path was already handled at level one
            explored += 1
            level_two_seen += 1
            e = walked[-1]
            ext = _external_neighbor(G, e, outside)
            if ext is not None:
                return ExtendAt(path=tuple(walked), endpoint=e, external=ext)
            if chord is None and G.has_edge(flipped[0], e):
                chord = Chord(path=tuple(walked), ends=(flipped[0], e))
                if not outside:
                    return chord
            if explored >= SEARCH_NODE_CAP:
                return chord or Stuck(len(level_one), level_two_seen, explored,
                                      "node budget exhausted")
    if chord is not None:
        return chord
    return Stuck(len(level_one), level_two_seen, explored, "no extension, no chord")


def absorb_external_vertex(G: Graph, cycle: list[int] | tuple[int, ...], w: int, a: int,
                           constraints: RotationConstraints | None = None) -> list[int]:
    """Open a cycle at ``w`` and append its outside neighbor ``a``.

    Removes one of the two cycle edges at w - never a locked one, a soft
    one only if both are soft (counted) - and returns a path with the same
    number of edges as the cycle, ending at a.
    """
    if constraints is None:
        constraints = RotationConstraints()
    cyc = list(cycle)
    q = len(cyc)
    if a in cyc:
        raise RotationError(f"vertex {a} is on the cycle")
    if not G.has_edge(a, w):
        raise RotationError(f"({a}, {w}) is not an edge")
    i = cyc.index(w)
    prev_e = edge_key(cyc[i - 1], w)
    next_e = edge_key(w, cyc[(i + 1) % q])
    options = [e for e in (prev_e, next_e) if e not in constraints.locked]
    if not options:
        raise RotationError(f"both cycle edges at {w} are locked")
    clean = [e for e in options if e not in constraints.soft]
    drop = clean[0] if clean else options[0]
    constraints.record_absorption(drop)
    if drop == next_e:
        opened = cyc[i + 1 :] + cyc[: i + 1]      # ends at w
    else:
        opened = (cyc[i:] + cyc[:i])[::-1]        # starts at prev, ends at w
    opened.append(a)
    return opened


@dataclass
class HamiltonResult:
    """Outcome of find_hamilton_cycle: a cycle or a structured failure."""

    cycle: tuple[int, ...] | None
    failure: str | None = None
    iterations: int = 0
    rotations: int = 0
    soft_breaks: int = 0
    path_len: int = 0

    @property
    def ok(self) -> bool:
        return self.cycle is not None


def _greedy_extend(G: Graph, path: list[int]) -> list[int]:
    """Extend a path at both ends, always stepping to the lowest new vertex."""
    used = mask_of(path)
    grew = True
    while grew:
        grew = False
        free = G.adjacency_bits(path[-1]) & ~used
        if free:
            v = (free & -free).bit_length() - 1
            path.append(v)
            used |= 1 << v
            grew = True
            continue
        free = G.adjacency_bits(path[0]) & ~used
        if free:
            v = (free & -free).bit_length() - 1
            path.insert(0, v)
            used |= 1 << v
            grew = True
    return path


def _greedy_seed(G: Graph, start_hint: int = 0) -> list[int]:
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    start = order[start_hint % G.n]
    return _greedy_extend(G, [start])


def _required_segments(required: frozenset[Edge]) -> list[list[int]] | None:
    """Arrange required edges into vertex-disjoint path segments.

    Returns None when impossible (a vertex on 3+ required edges, or a cycle
    among them): no Hamilton cycle through all of them could exist then
    either, except as the full required cycle itself.
    """
    adj: dict[int, list[int]] = {}
    for u, v in required:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(nb) > 2 for nb in adj.values()):
        return None
    segments = []
    visited: set[int] = set()
    for v in sorted(adj):
        if v in visited or len(adj[v]) == 2:
            continue
        seg = [v]
        visited.add(v)
        cur, prev = v, None
        while True:
            nxts = [w for w in adj[cur] if w != prev]
            if not nxts:
                break
            prev, cur = cur, nxts[0]
            seg.append(cur)
            visited.add(cur)
        segments.append(seg if seg[0] <= seg[-1] else seg[::-1])
    if len(visited) != len(adj):
        return None  # leftover degree-2 vertices form a required cycle
    return sorted(segments)


def _chain_segments(G: Graph, segments: list[list[int]]) -> list[int] | None:
    """Join segments into one path via BFS connectors through free vertices."""
    if not segments:
        return None
    remaining = segments[1:]
    path = list(segments[0])
    used = mask_of(path)
    while remaining:
        seg_mask = 0
        entry = {}
        for idx, seg in enumerate(remaining):
            seg_mask |= mask_of(seg)
            entry[seg[0]] = (idx, False)
            entry[seg[-1]] = (idx, True)
        connector = None
        for endside in (False, True):
            tip = path[0] if endside else path[-1]
            # BFS from tip through vertices free of the path and of segment
            # interiors; stop on any segment endpoint
            parent = {tip: None}
            queue = deque([tip])
            blocked = used | (seg_mask & ~mask_of(entry))
            target = None
            while queue:
                x = queue.popleft()
                for y in G.neighbors(x):
                    if y in parent or (blocked >> y) & 1:
                        continue
                    parent[y] = x
                    if y in entry:
                        target = y
                        queue.clear()
                        break
                    queue.append(y)
            if target is None:
                continue
            hop = []
            x = target
            while x is not None:
                hop.append(x)
                x = parent[x]
            hop.reverse()  # tip ... target
            connector = (endside, hop, entry[target])
            break
        if connector is None:
            return None
        endside, hop, (idx, reversed_seg) = connector
        seg = remaining.pop(idx)
        if reversed_seg:
            seg = seg[::-1]
        tail = hop[1:-1] + seg  # connector interior, then the segment from its entry end
        if endside:
            path = tail[::-1] + path
        else:
            path = path + tail
        used = mask_of(path)
    return path


def find_hamilton_cycle(G: Graph, constraints: RotationConstraints | None = None,
                        budget: int | None = None,
                        seed_path: list[int] | tuple[int, ...] | None = None,
                        start_hint: int = 0,
                        max_depth: int | None = None) -> HamiltonResult:
    """Heuristic Hamilton cycle search by rotation and extension.

    Starts from ``seed_path`` (or a greedy longest path threaded through the
    locked edges), then alternates: extend greedily, rotate until extendable,
    extend; when a chord closes a non-spanning cycle, absorb an outside
    vertex and continue. Any returned cycle contains every locked edge of
    the seed and validates against the graph; exhausting the iteration
    budget or getting stuck returns a failure report, never an exception.
    """
    if constraints is None:
        constraints = RotationConstraints()
    n = G.n
    if budget is None:
        budget = 10 * max(n, 1)
    if n < 3:
        return HamiltonResult(None, failure=f"no Hamilton cycle on {n} < 3 vertices")
    if G.min_degree() < 2:
        return HamiltonResult(None, failure="a vertex of degree < 2 rules out any Hamilton cycle")

    if seed_path is not None:
        path = list(seed_path)
        if len(path) < 2 or not is_path(G, path):
            return HamiltonResult(None, failure="seed is not a path of this graph")
        missing = sorted(e for e in constraints.locked if e not in path_edges(path))
        if missing:
            return HamiltonResult(None, failure=f"seed path misses locked edges {missing}")
    elif constraints.locked:
        absent = [e for e in sorted(constraints.locked) if not G.has_edge(*e)]
        if absent:
            return HamiltonResult(None, failure=f"locked edges not in the graph: {absent}")
        segments = _required_segments(constraints.locked)
        if segments is None:
            return HamiltonResult(None, failure="locked edges admit no spanning path through them")
        path = _chain_segments(G, segments)
        if path is None:
            return HamiltonResult(None, failure="could not chain locked edges into one path")
    else:
        path = _greedy_seed(G, start_hint)

    iterations = 0
    while iterations < budget:
        iterations += 1
        path = _greedy_extend(G, path)
        outcome = rotate_until_extendable(G, path, constraints, max_depth)
        if isinstance(outcome, ExtendAt):
            path = list(outcome.path) + [outcome.external]
            continue
        if isinstance(outcome, Chord):
            cyc = list(outcome.path)
            if len(cyc) == n:
                if not is_hamilton_cycle(G, cyc):
                    return HamiltonResult(None, failure="internal: closed sequence is not "
                                          "a Hamilton cycle", iterations=iterations)
                return HamiltonResult(tuple(cyc), iterations=iterations,
                                      rotations=constraints.rotations,
                                      soft_breaks=constraints.soft_breaks,
                                      path_len=n)
            outside = G.full_mask() & ~mask_of(cyc)
            hook = None
            for w in sorted(cyc):
                a = _external_neighbor(G, w, outside)
                if a is not None:
                    hook = (w, a)
                    break
            if hook is None:
                return HamiltonResult(None, failure="cycle spans a whole component; graph disconnected",
                                      iterations=iterations, rotations=constraints.rotations,
                                      soft_breaks=constraints.soft_breaks, path_len=len(cyc))
            try:
                path = absorb_external_vertex(G, cyc, hook[0], hook[1], constraints)
            except RotationError as exc:
                return HamiltonResult(None, failure=f"absorption blocked: {exc}",
                                      iterations=iterations, rotations=constraints.rotations,
                                      soft_breaks=constraints.soft_breaks, path_len=len(cyc))
            continue
        return HamiltonResult(None, failure=f"stuck: {outcome.message} "
                              f"(level sizes {outcome.level_one}/{outcome.level_two})",
                              iterations=iterations, rotations=constraints.rotations,
                              soft_breaks=constraints.soft_breaks, path_len=len(path))
    return HamiltonResult(None, failure="iteration budget exhausted",
                          iterations=iterations, rotations=constraints.rotations,
                          soft_breaks=constraints.soft_breaks, path_len=len(path))
