"""Merging families of vertex-disjoint paths with exact edge accounting.

A reduction step either deletes a path shorter than 2k-1 edges or splices
two paths together through a short connector, trimming at most k-1 edges
off each spliced end. Writing mu for the drop in the number of paths, the
ledger invariants

    lost   <= 2*(k-1)*mu        (edges of the old family no longer present)
    gained <= (d+2)*mu          (new edges introduced)

hold after every single step and are asserted, not assumed. Connectors run
from a vertex x within distance k-1 of one path's end to a vertex y near
another's, either as the direct edge (x, y) or as x-a-...-b-y where the
interior lives entirely outside the family's vertex set and a-...-b has at
most d edges.

The driver merge_into_single_path feeds a matching through rounds of
reductions with a growing end-depth schedule, protecting matching edges
from trims for as long as any protecting move exists.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field

from .graph import Edge, Graph, edge_key, mask_of, path_edges

log = logging.getLogger(__name__)


class FamilyError(ValueError):
    """Malformed path family (shared vertices, trivial paths)."""


class BudgetError(AssertionError):
    """An accounting invariant failed; indicates a bug in the move logic."""


@dataclass
class ExtensionBudget:
    """Accounting for a sequence of (d, k) path-family reductions.

    d bounds the connector interior (a merge gains at most d+2 edges), k the
    end depth (a merge trims at most k-1 edges per side, a deletion removes
    a path of fewer than 2k-1 edges). mu counts completed moves.
    """

    d: int
    k: int
    mu: int = 0
    lost: int = 0
    gained: int = 0

    def check(self) -> None:
        if self.lost > 2 * (self.k - 1) * self.mu:
            raise BudgetError(f"lost {self.lost} > 2(k-1)*mu = {2 * (self.k - 1) * self.mu}")
        if self.gained > (self.d + 2) * self.mu:
            raise BudgetError(f"gained {self.gained} > (d+2)*mu = {(self.d + 2) * self.mu}")
        if self.mu < 0:
            raise BudgetError("negative move count")


def _canonical(path) -> tuple[int, ...]:
    p = tuple(path)
    return p if p[0] <= p[-1] else p[::-1]


@dataclass
class PathFamily:
    """Vertex-disjoint non-trivial paths plus the edge set they started from."""

    paths: list[tuple[int, ...]]
    origin_edges: frozenset[Edge]

    def __post_init__(self) -> None:
        self.paths = sorted(_canonical(p) for p in self.paths)
        seen: set[int] = set()
        for p in self.paths:
            if len(p) < 2:
                raise FamilyError(f"trivial path {p}")
            vs = set(p)
            if len(vs) != len(p):
                raise FamilyError(f"repeated vertex in {p}")
            if vs & seen:
                raise FamilyError(f"path {p} shares vertices with the family")
            seen |= vs

    @classmethod
    def from_matching(cls, matching) -> "PathFamily":
        edges = frozenset(edge_key(*e) for e in matching)
        return cls(paths=[e for e in sorted(edges)], origin_edges=edges)

    @classmethod
    def from_paths(cls, paths) -> "PathFamily":
        fam = cls(paths=list(paths), origin_edges=frozenset())
        fam.origin_edges = fam.edges()
        return fam

    def edges(self) -> frozenset[Edge]:
        out: set[Edge] = set()
        for p in self.paths:
            out |= path_edges(p)
        return frozenset(out)

    def vertices(self) -> set[int]:
        out: set[int] = set()
        for p in self.paths:
            out.update(p)
        return out

    def size(self) -> int:
        return len(self.paths)


def k_end(path, k: int) -> set[int]:
    """The at most 2k vertices within path-distance k-1 of either endpoint."""
    if k < 1:
        raise ValueError(f"end depth must be >= 1, got {k}")
    p = tuple(path)
    return set(p[:k]) | set(p[-k:])


def _split_at(path: tuple[int, ...], x: int) -> tuple[tuple[int, ...], frozenset[Edge]]:
    """Keep the longer piece of ``path`` around ``x`` (oriented to end at x);
    return it with the trimmed piece's edges."""
    idx = path.index(x)
    head_edges = idx
    tail_edges = len(path) - 1 - idx
    if head_edges >= tail_edges:
        kept = path[: idx + 1]
        trimmed = path_edges(path[idx:])
    else:
        kept = path[idx:][::-1]
        trimmed = path_edges(path[: idx + 1])
    return kept, trimmed


def _end_candidates(path: tuple[int, ...], k: int) -> list[int]:
    """k-end vertices ordered by trim cost, then by vertex index."""
    L = len(path) - 1
    cands = {}
    for i, v in enumerate(path):
        cost = min(i, L - i)
        if cost <= k - 1:
            cands[v] = cost
    return sorted(cands, key=lambda v: (cands[v], v))


def _find_connector(G: Graph, x: int, y: int, family_mask: int, d: int) -> list[int] | None:
    """Shortest x..y connector interior through vertices off the family.

    Returns the interior vertex sequence a..b (possibly length 1 when a=b),
    with at most d edges inside, or None. The direct edge case is handled by
    the caller.
    """
    outside = ~family_mask
    sources = G.adjacency_bits(x) & outside & G.full_mask()
    targets = G.adjacency_bits(y) & outside & G.full_mask()
    if not sources or not targets:
        return None
    parent: dict[int, int | None] = {}
    queue: deque[tuple[int, int]] = deque()
    for a in sorted(v for v in range(G.n) if sources >> v & 1):
        parent[a] = None
        if targets >> a & 1:
            return [a]
        queue.append((a, 0))
    while queue:
        v, dist = queue.popleft()
        if dist >= d:
            continue
        for w in G.neighbors(v):
            if w in parent or not (outside >> w & 1):
                continue
            parent[w] = v
            if targets >> w & 1:
                interior = [w]
                cur = v
                while cur is not None:
                    interior.append(cur)
                    cur = parent[cur]
                interior.reverse()
                return interior
            queue.append((w, dist + 1))
    return None


def _find_merge(G: Graph, paths: list[tuple[int, ...]], k: int, d: int,
                protect: frozenset[Edge], spare_protected: bool):
    """First applicable merge under the deterministic candidate order.

    Returns (i, j, kept_i, kept_j, interior, lost_edges, gained) or None.
    kept_i ends at its splice vertex; kept_j starts at its.
    """
    ends = [_end_candidates(p, k) for p in paths]
    end_masks = [mask_of(e) for e in ends]
    fam_mask = 0
    for p in paths:
        fam_mask |= mask_of(p)
    # direct edges first: cheapest gain, no outside vertices consumed
    for i in range(len(paths)):
        for j in range(len(paths)):
            if i == j:
                continue
            for x in ends[i]:
                hit = G.adjacency_bits(x) & end_masks[j]
                if not hit:
                    continue
                kept_i, trim_i = _split_at(paths[i], x)
                if spare_protected and trim_i & protect:
                    continue
                for y in sorted(v for v in ends[j] if hit >> v & 1):
                    kept_j, trim_j = _split_at(paths[j], y)
                    if spare_protected and trim_j & protect:
                        continue
                    return (i, j, kept_i, kept_j[::-1], [],
                            trim_i | trim_j, 1)
    for i in range(len(paths)):
        for j in range(len(paths)):
            if i == j:
                continue
            for x in ends[i]:
                kept_i, trim_i = _split_at(paths[i], x)
                if spare_protected and trim_i & protect:
                    continue
                for y in ends[j]:
                    kept_j, trim_j = _split_at(paths[j], y)
                    if spare_protected and trim_j & protect:
                        continue
                    interior = _find_connector(G, x, y, fam_mask, d)
                    if interior is not None:
                        return (i, j, kept_i, kept_j[::-1], interior,
                                trim_i | trim_j, len(interior) + 1)
    return None


def reduce_family(G: Graph, family: PathFamily, budget: ExtensionBudget,
                  protect: frozenset[Edge] = frozenset(),
                  spare_protected: bool = True) -> PathFamily:
    """Apply deletion and merge moves to a fixpoint, mutating ``budget``.

    Deletion drops any path of fewer than 2k-1 edges; merging splices two
    paths whose k-ends connect directly or through at most d outside edges.
    When ``spare_protected``, moves that would discard a protected edge are
    skipped. Budget invariants are asserted after every move.
    """
    k, d = budget.k, budget.d
    paths = list(family.paths)
    while True:
        # deletions first
        deleted = False
        for idx, p in enumerate(paths):
            if len(p) - 1 < 2 * k - 1:
                if spare_protected and path_edges(p) & protect:
                    continue
                budget.mu += 1
                budget.lost += len(p) - 1
                budget.check()
                paths.pop(idx)
                deleted = True
                break
        if deleted:
            continue
        if len(paths) < 2:
            break
        found = _find_merge(G, paths, k, d, protect, spare_protected)
        if found is None:
            break
        i, j, kept_i, kept_j, interior, lost_edges, gained = found
        merged = _canonical(kept_i + tuple(interior) + kept_j)
        budget.mu += 1
        budget.lost += len(lost_edges)
        budget.gained += gained
        budget.check()
        paths = sorted([p for idx, p in enumerate(paths) if idx not in (i, j)] + [merged])
    return PathFamily(paths=paths, origin_edges=family.origin_edges)


@dataclass
class MergeOutcome:
    """Result of collapsing a matching into one path."""

    path: tuple[int, ...]
    lost_matching: frozenset[Edge]
    budgets: list[ExtensionBudget] = field(default_factory=list)
    k_schedule: list[int] = field(default_factory=list)
    dissolved: int = 0
    rounds: int = 0

    @property
    def mu(self) -> int:
        return sum(b.mu for b in self.budgets)

    @property
    def lost(self) -> int:
        return sum(b.lost for b in self.budgets)

    @property
    def gained(self) -> int:
        return sum(b.gained for b in self.budgets)


def merge_into_single_path(G: Graph, matching, alpha: float) -> MergeOutcome:
    """Merge a matching (as length-1 paths) into a single path.

    Runs reduction rounds with connector cap d = ceil(6/alpha) and an
    end-depth schedule k = 1, then ceil(n^((i-1)*alpha/2)), with k always
    capped so that deletions can never claim a shortest path. Matching
    edges are protected from trims while any protecting move exists; only
    then are lossy moves allowed. If several paths survive, all but the
    largest are dissolved and their matching edges reported as lost.
    """
    M = frozenset(edge_key(*e) for e in matching)
    if not M:
        raise ValueError("matching must be non-empty")
    touch: set[int] = set()
    for u, v in M:
        if u in touch or v in touch:
            raise FamilyError(f"edges share vertex: not a matching around ({u}, {v})")
        touch.update((u, v))
    family = PathFamily.from_matching(M)
    d = max(1, math.ceil(6.0 / alpha))
    out = MergeOutcome(path=(), lost_matching=frozenset())

    def round_with(k: int, spare: bool) -> bool:
        nonlocal family
        out.rounds += 1
        budget = ExtensionBudget(d=d, k=k)
        family = reduce_family(G, family, budget, protect=M, spare_protected=spare)
        out.budgets.append(budget)
        out.k_schedule.append(k)
        return budget.mu > 0

    # the growing schedule, with k capped so deletions can never claim a
    # shortest path (protected paths are skipped anyway; the cap keeps the
    # schedule honest for unprotected members too)
    i = 1
    max_rounds = G.n + len(family.paths) + 8
    while family.size() > 1 and out.rounds < max_rounds:
        k_target = 1 if i == 1 else math.ceil(G.n ** ((i - 1) * alpha / 2.0))
        shortest = min(len(p) - 1 for p in family.paths)
        k_cap = max(1, (shortest + 1) // 2)
        k = min(k_target, k_cap)
        if k < k_target:
            log.debug("end depth capped at %d (schedule wanted %d)", k, k_target)
        progress = round_with(k, spare=True)
        if not progress and k >= k_cap:
            break
        i += 1
    # loss avoidance: before accepting any loss, retry with ends as deep as
    # the longest path allows (splice targets anywhere; 2k-1 stays at most
    # the longest edge length, so rule 1 can never empty the family), then
    # as a last resort allow lossy trims
    def deep_end() -> int:
        return max(1, (max(len(p) - 1 for p in family.paths) + 1) // 2)

    while family.size() > 1 and out.rounds < max_rounds:
        if not round_with(deep_end(), spare=True):
            break
    while family.size() > 1 and out.rounds < max_rounds:
        if not round_with(deep_end(), spare=False):
            break

    paths = family.paths
    keep = max(paths, key=lambda p: (len(p), tuple(-v for v in p)))
    out.dissolved = len(paths) - 1
    out.path = keep
    out.lost_matching = M - path_edges(keep)
    return out
