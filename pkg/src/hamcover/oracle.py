"""Brute-force oracles and structure validators.

Everything here is exact and independent of the heuristic machinery: a
bitmask dynamic program and a backtracking enumerator for Hamiltonicity,
exhaustive expansion checks for tiny graphs, a queue-based BFS kept separate
from the bitset BFS in graph.py, and validators for covers, path families
and matchings. These are the ground truth the test suite measures the rest
of the package against.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .graph import (
    Edge,
    Graph,
    edge_key,
    iter_bits,
    mask_of,
    neighborhood_bits,
)

HELD_KARP_LIMIT = 20
EXHAUSTIVE_LIMIT = 16


@dataclass(frozen=True)
class OracleVerdict:
    decided: bool
    value: bool | None = None
    witness: tuple[int, ...] | None = None


def held_karp_hamiltonian(G: Graph) -> OracleVerdict:
    """Exact Hamiltonicity by subset DP anchored at vertex 0.

    Refuses (decided=False) above 20 vertices. A yes-verdict carries the
    lexicographically smallest Hamilton cycle starting at 0 as witness.
    """
    n = G.n
    if n > HELD_KARP_LIMIT:
        return OracleVerdict(decided=False)
    if n < 3:
        return OracleVerdict(decided=True, value=False)
    if any(G.degree(v) < 2 for v in range(n)):
        return OracleVerdict(decided=True, value=False)
    bits = [G.adjacency_bits(v) for v in range(n)]
    full = (1 << n) - 1
    # ends[mask] = endpoint bitmask of paths from 0 covering exactly mask
    ends = [0] * (1 << n)
    ends[1] = 1
    for mask in range(1, 1 << n, 2):
        cur = ends[mask]
        if not cur:
            continue
        free = full & ~mask
        for u in iter_bits(free):
            if bits[u] & cur:
                ends[mask | (1 << u)] |= 1 << u
    if not (ends[full] & bits[0]):
        return OracleVerdict(decided=True, value=False)
    return OracleVerdict(decided=True, value=True, witness=_lex_min_cycle(G, bits, full))


def _lex_min_cycle(G: Graph, bits: list[int], full: int) -> tuple[int, ...]:
    # tail[mask] = vertices v in mask starting a path that covers mask and
    # ends at a neighbor of 0 (masks never include vertex 0)
    n = G.n
    tail = [0] * (1 << n)
    for v in range(1, n):
        if bits[v] & 1:
            tail[1 << v] = 1 << v
    for mask in range(2, 1 << n, 2):
        acc = 0
        rest = mask
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if bits[v] & tail[mask ^ low]:
                acc |= low
        tail[mask] |= acc
    seq = [0]
    remaining = full & ~1
    cur = 0
    while remaining:
        options = tail[remaining] & bits[cur]
        nxt = (options & -options).bit_length() - 1
        seq.append(nxt)
        remaining &= ~(1 << nxt)
        cur = nxt
    return tuple(seq)


def backtracking_hamiltonian(G: Graph) -> OracleVerdict:
    """Independent DFS enumerator; agrees with held_karp_hamiltonian.

    First cycle found under sorted neighbor order is the lexicographically
    smallest one starting at vertex 0.
    """
    n = G.n
    if n < 3:
        return OracleVerdict(decided=True, value=False)
    seq = [0]
    used = 1

    def dfs() -> bool:
        nonlocal used
        cur = seq[-1]
        if len(seq) == n:
            return G.has_edge(cur, 0)
        for w in G.neighbors(cur):
            if used >> w & 1:
                continue
            seq.append(w)
            used |= 1 << w
            if dfs():
                return True
            seq.pop()
            used &= ~(1 << w)
        return False

    if dfs():
        return OracleVerdict(decided=True, value=True, witness=tuple(seq))
    return OracleVerdict(decided=True, value=False)


@dataclass(frozen=True)
class ExpansionVerdict:
    holds: bool
    witness: tuple | None = None  # violating set, or (A, B) pair for the edge property
    vacuous: bool = False


def exhaustive_expansion_check(G: Graph, s: float, g: float, l: float) -> tuple[ExpansionVerdict, ExpansionVerdict]:
    """Exact verdicts for the two expansion properties on graphs with n <= 16.

    Small property: every vertex set A with |A| <= g has external
    neighborhood of size >= s*|A|. Large property: any two disjoint sets of
    size >= l span an edge. Witnesses are size-then-lex minimal.
    """
    n = G.n
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive check limited to n <= {EXHAUSTIVE_LIMIT}, got {n}")

    small = ExpansionVerdict(holds=True)
    max_a = min(int(g), n)
    done = False
    for size in range(1, max_a + 1):
        if done:
            break
        for A in combinations(range(n), size):
            nb = neighborhood_bits(G, A)
            if nb.bit_count() < s * size:
                small = ExpansionVerdict(holds=False, witness=A)
                done = True
                break

    c = math.ceil(l)
    if c > n // 2:
        # no two disjoint sets of that size exist
        large = ExpansionVerdict(holds=True, vacuous=True)
    else:
        large = ExpansionVerdict(holds=True)
        for A in combinations(range(n), c):
            amask = mask_of(A)
            blocked = amask | neighborhood_bits(G, A)
            free = G.full_mask() & ~blocked
            if free.bit_count() >= c:
                B = []
                for v in iter_bits(free):
                    B.append(v)
                    if len(B) == c:
                        break
                large = ExpansionVerdict(holds=False, witness=(A, tuple(B)))
                break
    return small, large


def bfs_distances_reference(G: Graph, source: int) -> list[int]:
    """Queue-based BFS, deliberately independent of graph.bfs_distances."""
    dist = [-1] * G.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for w in G.neighbors(v):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


@dataclass
class CoverValidation:
    ok: bool
    n_cycles: int
    bad_cycle: int | None = None  # index of first invalid cycle
    coverage: dict[Edge, int] = field(default_factory=dict)
    uncovered: list[Edge] = field(default_factory=list)

    @property
    def min_coverage(self) -> int:
        return min(self.coverage.values(), default=0)


def validate_cover(G: Graph, cycles: list[tuple[int, ...]]) -> CoverValidation:
    """Check every cycle is a Hamilton cycle of G and every edge is covered."""
    coverage: dict[Edge, int] = {e: 0 for e in G.edges()}
    bad = None
    for idx, cyc in enumerate(cycles):
        vs = list(cyc)
        if len(vs) != G.n or set(vs) != set(range(G.n)) or G.n < 3:
            bad = idx
            break
        valid = True
        for i in range(len(vs)):
            u, v = vs[i], vs[(i + 1) % len(vs)]
            if not G.has_edge(u, v):
                valid = False
                break
        if not valid:
            bad = idx
            break
        for i in range(len(vs)):
            coverage[edge_key(vs[i], vs[(i + 1) % len(vs)])] += 1
    uncovered = [e for e, c in sorted(coverage.items()) if c == 0]
    ok = bad is None and not uncovered
    return CoverValidation(ok=ok, n_cycles=len(cycles), bad_cycle=bad,
                           coverage=coverage, uncovered=uncovered)


@dataclass(frozen=True)
class FamilyValidation:
    ok: bool
    violation: str | None = None


def validate_family(G: Graph, family) -> FamilyValidation:
    """Validate a family of vertex sequences as disjoint non-trivial paths.

    A matching passes as a family of 2-vertex paths; the first violation
    (missing edge, shared vertex, trivial member) is named.
    """
    seen: set[int] = set()
    for seq in sorted(tuple(p) for p in family):
        vs = list(seq)
        if len(vs) < 2:
            return FamilyValidation(False, f"trivial member {vs}")
        if len(set(vs)) != len(vs):
            return FamilyValidation(False, f"repeated vertex inside {vs}")
        for v in vs:
            if not (0 <= v < G.n):
                return FamilyValidation(False, f"vertex {v} out of range")
            if v in seen:
                return FamilyValidation(False, f"vertex {v} shared between members")
        for i in range(len(vs) - 1):
            if not G.has_edge(vs[i], vs[i + 1]):
                return FamilyValidation(False, f"missing edge ({vs[i]}, {vs[i + 1]})")
        seen.update(vs)
    return FamilyValidation(True)
