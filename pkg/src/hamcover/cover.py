"""The packing-then-cover pipeline.

To cover every edge of a graph by Hamilton cycles: greedily extract a
packing of edge-disjoint Hamilton cycles (each one lowers every degree by
exactly 2), color the leftover edges into matchings by first-fit, and cover
each matching by Hamilton cycles of the original graph, seeding every
search with the matching merged into a single path and protecting those
edges during rotations. A certificate records the cycles and per-edge
coverage counts; it is validated against the independent oracle before
being returned. Search failures are values carrying the phase and the
stuck instance, never exceptions.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

from .graph import (
    Edge,
    Graph,
    canonical_cycle,
    cycle_edges,
    edge_key,
    is_connected,
    path_edges,
)
from .gnp import RngSeed, expander_params_for_gnp, sample_gnp
from .expansion import (
    large_expansion_witness_search,
    small_expansion_witness_search,
)
from .families import merge_into_single_path
from .oracle import validate_cover
from .rotation import RotationConstraints, find_hamilton_cycle

log = logging.getLogger(__name__)

# give up on a phase after this many consecutive fruitless searches
STALL_LIMIT = 3


def is_matching(edges) -> bool:
    seen: set[int] = set()
    for u, v in edges:
        if u == v or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def greedy_maximal_matching(G: Graph) -> frozenset[Edge]:
    """First-fit maximal matching over lexicographically sorted edges."""
    used = 0
    out = []
    for u, v in G.edges():
        if not (used >> u & 1) and not (used >> v & 1):
            out.append((u, v))
            used |= (1 << u) | (1 << v)
    return frozenset(out)


def greedy_edge_coloring(H: Graph) -> list[frozenset[Edge]]:
    """Proper edge coloring by first-fit over lexicographic edge order.

    Uses at most 2*max_degree - 1 classes; each class is a matching and
    their union is the whole edge set.
    """
    classes: list[list[Edge]] = []
    used = [0] * H.n  # per-vertex bitmask of colors in use
    for u, v in H.edges():
        taken = used[u] | used[v]
        color = (~taken & (taken + 1)).bit_length() - 1
        if color == len(classes):
            classes.append([])
        classes[color].append((u, v))
        used[u] |= 1 << color
        used[v] |= 1 << color
    return [frozenset(c) for c in classes]


@dataclass
class PackingResult:
    cycles: list[tuple[int, ...]]
    residual: Graph
    target: int
    stopped: str = ""          # why extraction ended
    failures: int = 0

    @property
    def achieved(self) -> int:
        return len(self.cycles)


def extract_packing(G: Graph, target: int, budget: int | None = None) -> PackingResult:
    """Greedily extract up to ``target`` edge-disjoint Hamilton cycles.

    Each found cycle is removed before the next search. Stops at the
    target, when the residual minimum degree drops below 2, or after
    three consecutive search failures (retried from different greedy
    starts). Shortfall is reported, not raised.
    """
    residual = G
    cycles: list[tuple[int, ...]] = []
    failures = 0
    attempt = 0
    stopped = "target reached"
    while len(cycles) < target:
        if residual.min_degree() < 2:
            stopped = "residual minimum degree below 2"
            break
        res = find_hamilton_cycle(residual, budget=budget, start_hint=attempt)
        if res.ok:
            cycles.append(res.cycle)
            residual = residual.remove_edges(cycle_edges(res.cycle))
            attempt = 0
        else:
            failures += 1
            attempt += 1
            if attempt >= STALL_LIMIT:
                stopped = f"search stalled: {res.failure}"
                break
    return PackingResult(cycles=cycles, residual=residual, target=target,
                         stopped=stopped, failures=failures)


@dataclass
class OnceOutcome:
    """One protected Hamilton cycle aimed at a matching."""

    cycle: tuple[int, ...] | None
    uncovered: frozenset[Edge]
    failure: str | None = None
    merge_lost: int = 0
    soft_breaks: int = 0


def cover_matching_once(G: Graph, matching, alpha: float,
                        budget: int | None = None, attempt: int = 0) -> OnceOutcome:
    """Find one Hamilton cycle covering as much of a matching as possible.

    The matching is merged into a single seed path; edges on the seed are
    soft-protected during the search, and additionally locked when the
    matching is small enough (fewer than alpha^3 * n^(alpha/2) / 136 edges)
    that full preservation is the contract. Returns the cycle and the
    matching edges it missed.
    """
    M = frozenset(edge_key(*e) for e in matching)
    if not is_matching(M):
        return OnceOutcome(None, M, failure="input edge set is not a matching")
    if any(not G.has_edge(u, v) for u, v in M):
        return OnceOutcome(None, M, failure="matching contains edges absent from the graph")
    if not M:
        res = find_hamilton_cycle(G, budget=budget, start_hint=attempt)
        if res.ok:
            return OnceOutcome(res.cycle, frozenset())
        return OnceOutcome(None, frozenset(), failure=res.failure)

    merged = merge_into_single_path(G, M, alpha)
    seed = merged.path
    on_seed = M & path_edges(seed)
    small_cap = alpha ** 3 * G.n ** (alpha / 2.0) / 136.0
    locked = on_seed if len(M) < small_cap else frozenset()
    s = G.n ** alpha
    if locked and len(locked) > s / 24.0 - 0.5:
        log.info("locked set of %d edges exceeds the s/24 - 1/2 = %.2f regime "
                 "the rotation guarantees assume (s = %.2f)", len(locked),
                 s / 24.0 - 0.5, s)
    constraints = RotationConstraints(locked=locked, soft=on_seed)

    if attempt == 0:
        res = find_hamilton_cycle(G, constraints, budget=budget, seed_path=seed)
    elif attempt == 1:
        res = find_hamilton_cycle(G, constraints, budget=budget, seed_path=seed[::-1])
    else:
        # later retries abandon the merged seed for greedy variety
        res = find_hamilton_cycle(G, RotationConstraints(soft=M), budget=budget,
                                  start_hint=attempt)
    if not res.ok:
        return OnceOutcome(None, M, failure=res.failure,
                           merge_lost=len(merged.lost_matching))
    return OnceOutcome(res.cycle, M - cycle_edges(res.cycle),
                       merge_lost=len(merged.lost_matching),
                       soft_breaks=res.soft_breaks)


@dataclass
class MatchingCover:
    ok: bool
    cycles: list[tuple[int, ...]]
    uncovered: frozenset[Edge] = frozenset()
    failure: str | None = None
    soft_breaks: int = 0
    merge_lost: int = 0


def matching_chunk_cap(n: int, alpha: float) -> int:
    """Chunk size for splitting matchings, floored at 1 for small n."""
    return max(1, int(alpha ** 3 * n / 9200.0))


def cover_matching(G: Graph, matching, alpha: float, budget: int | None = None,
                   chunk_cap: int | None = None) -> MatchingCover:
    """Cover every edge of a matching by Hamilton cycles of G.

    The matching is split into chunks of at most ``chunk_cap`` edges
    (default: the alpha^3*n/9200 rule floored at 1; pass len(matching) to
    keep it whole), and each chunk is covered by iterating
    cover_matching_once on whatever remains uncovered. Stalls out after
    three iterations without progress.
    """
    M = sorted(edge_key(*e) for e in matching)
    if chunk_cap is None:
        chunk_cap = matching_chunk_cap(G.n, alpha)
    cycles: list[tuple[int, ...]] = []
    soft_breaks = 0
    merge_lost = 0
    for lo in range(0, len(M), chunk_cap):
        residual = frozenset(M[lo : lo + chunk_cap])
        attempt = 0
        while residual:
            once = cover_matching_once(G, residual, alpha, budget=budget, attempt=attempt)
            soft_breaks += once.soft_breaks
            merge_lost += once.merge_lost
            if once.cycle is None or len(once.uncovered) >= len(residual):
                attempt += 1
                if attempt >= STALL_LIMIT:
                    detail = once.failure or "no progress on uncovered matching edges"
                    return MatchingCover(False, cycles, uncovered=residual,
                                         failure=detail, soft_breaks=soft_breaks,
                                         merge_lost=merge_lost)
                continue
            cycles.append(once.cycle)
            residual = once.uncovered
            attempt = 0
    return MatchingCover(True, cycles, soft_breaks=soft_breaks, merge_lost=merge_lost)


@dataclass
class CoverCertificate:
    """A Hamilton covering: cycles, per-edge counts, and the packing prefix."""

    cycles: list[tuple[int, ...]]
    coverage: dict[Edge, int]
    h: int                      # how many leading cycles form the packing

    @property
    def cover_size(self) -> int:
        return len(self.cycles)

    def min_coverage(self) -> int:
        return min(self.coverage.values(), default=0)


@dataclass
class CoverOutcome:
    certificate: CoverCertificate | None
    failure_phase: str | None = None
    failure_detail: str | None = None
    packing_stopped: str = ""
    losses: dict = field(default_factory=dict)
    timings_ms: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.certificate is not None


def cover_graph(G: Graph, alpha: float, packing_target: int | None = None,
                budget: int | None = None) -> CoverOutcome:
    """Cover all edges of G by Hamilton cycles: pack, color, cover.

    Phase 1 extracts up to packing_target (default: half the minimum
    degree) edge-disjoint cycles. Phase 2 colors the residual edges into
    matchings. Phase 3 covers each matching - minus edges the certificate
    already covers - by protected-cycle searches over the whole graph. The
    assembled certificate is validated internally before being returned.
    """
    if G.n < 3 or G.m == 0:
        return CoverOutcome(None, "precheck", f"degenerate graph (n={G.n}, m={G.m})")
    if not is_connected(G):
        return CoverOutcome(None, "precheck", "graph is disconnected")
    if G.min_degree() < 2:
        return CoverOutcome(None, "precheck", "minimum degree below 2")
    if packing_target is None:
        packing_target = G.min_degree() // 2
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    packing = extract_packing(G, packing_target, budget=budget)
    timings["packing"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    classes = greedy_edge_coloring(packing.residual)
    timings["coloring"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    cycles = list(packing.cycles)
    covered: set[Edge] = set()
    for c in cycles:
        covered |= cycle_edges(c)
    soft_breaks = 0
    merge_lost = 0
    for cls in classes:
        need = cls - covered
        if not need:
            continue
        mc = cover_matching(G, need, alpha, budget=budget, chunk_cap=len(need))
        soft_breaks += mc.soft_breaks
        merge_lost += mc.merge_lost
        cycles.extend(mc.cycles)
        for c in mc.cycles:
            covered |= cycle_edges(c)
        if not mc.ok:
            timings["covering"] = (time.perf_counter() - t0) * 1000.0
            return CoverOutcome(None, "covering", mc.failure,
                                packing_stopped=packing.stopped,
                                losses={"merge_lost": merge_lost, "soft_breaks": soft_breaks,
                                        "uncovered": sorted(mc.uncovered)},
                                timings_ms=timings)
    timings["covering"] = (time.perf_counter() - t0) * 1000.0

    cycles = [canonical_cycle(c) for c in cycles]
    check = validate_cover(G, cycles)
    if not check.ok:
        return CoverOutcome(None, "validation",
                            f"internal certificate check failed (bad cycle {check.bad_cycle}, "
                            f"{len(check.uncovered)} uncovered)",
                            packing_stopped=packing.stopped, timings_ms=timings)
    cert = CoverCertificate(cycles=cycles, coverage=check.coverage, h=packing.achieved)
    lower = math.ceil(G.max_degree() / 2)
    if cert.cover_size < lower:
        return CoverOutcome(None, "validation",
                            f"cover size {cert.cover_size} beats the degree bound {lower}: "
                            "certificate must be wrong", timings_ms=timings)
    return CoverOutcome(cert, packing_stopped=packing.stopped,
                        losses={"merge_lost": merge_lost, "soft_breaks": soft_breaks},
                        timings_ms=timings)


@dataclass
class ExperimentReport:
    """One seeded end-to-end run on a G(n,p) sample."""

    n: int
    p: float
    base: int
    stream: int
    m: int = 0
    delta_max: int = 0
    delta_min: int = 0
    expander: dict = field(default_factory=dict)
    h: int = 0
    cover_size: int = 0
    ratio: float = 0.0
    valid: bool = False
    error: str | None = None
    losses: dict = field(default_factory=dict)
    timings_ms: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "p": self.p, "base": self.base, "stream": self.stream,
            "m": self.m, "delta_max": self.delta_max, "delta_min": self.delta_min,
            "expander": self.expander, "h": self.h, "cover_size": self.cover_size,
            "ratio": self.ratio, "valid": self.valid, "error": self.error,
            "losses": self.losses, "timings_ms": self.timings_ms,
        }


CSV_FIELDS = ["n", "p", "base", "stream", "m", "delta_max", "delta_min",
              "s", "alpha", "h", "cover_size", "ratio", "valid", "error"]


def csv_row(r: ExperimentReport) -> dict:
    return {
        "n": r.n, "p": r.p, "base": r.base, "stream": r.stream, "m": r.m,
        "delta_max": r.delta_max, "delta_min": r.delta_min,
        "s": r.expander.get("params", {}).get("s"),
        "alpha": r.expander.get("params", {}).get("alpha"),
        "h": r.h, "cover_size": r.cover_size, "ratio": r.ratio,
        "valid": int(r.valid), "error": r.error or "",
    }


def run_single_experiment(n: int, p: float, seed: RngSeed, alpha: float | None = None,
                          packing_target: int | None = None, budget: int | None = None,
                          check_trials: int | None = None) -> ExperimentReport:
    report = ExperimentReport(n=n, p=p, base=seed.base, stream=seed.stream)
    if n * p < 20:
        log.warning("n*p = %.1f is small; samples may well not be Hamiltonian", n * p)
    t0 = time.perf_counter()
    G = sample_gnp(n, p, seed)
    report.timings_ms["sample"] = (time.perf_counter() - t0) * 1000.0
    report.m = G.m
    report.delta_max = G.max_degree()
    report.delta_min = G.min_degree()

    t0 = time.perf_counter()
    try:
        params = expander_params_for_gnp(n, p)
        small = small_expansion_witness_search(G, params.s, params.g,
                                               trials=check_trials, seed=seed)
        large = large_expansion_witness_search(G, params.frame_clamped,
                                               trials=check_trials, seed=seed)
        report.expander = {
            "params": params.to_dict(),
            "small_verdict": small.verdict,
            "large_verdict": large.verdict,
        }
        if alpha is None:
            alpha = params.alpha
    except ValueError as exc:
        report.expander = {"error": str(exc)}
        if alpha is None:
            alpha = 0.3
    report.timings_ms["expansion_checks"] = (time.perf_counter() - t0) * 1000.0

    outcome = cover_graph(G, alpha, packing_target=packing_target, budget=budget)
    report.timings_ms.update(outcome.timings_ms)
    report.losses = outcome.losses
    if not outcome.ok:
        report.error = f"{outcome.failure_phase}: {outcome.failure_detail}"
        return report
    cert = outcome.certificate
    report.h = cert.h
    report.cover_size = cert.cover_size
    report.ratio = cert.cover_size / (n * p / 2.0)
    report.valid = validate_cover(G, cert.cycles).ok
    return report


def run_gnp_experiment(n: int, p: float, seeds, alpha: float | None = None,
                       base_seed: int = 0, packing_target: int | None = None,
                       budget: int | None = None, check_trials: int | None = None,
                       jobs: int = 1) -> list[ExperimentReport]:
    """End-to-end experiment over a list of seed streams.

    Per-seed failures land in the report's error field; the run continues.
    Reports come back in seed order regardless of worker scheduling.
    """
    tasks = [(n, p, RngSeed(base_seed, s), alpha, packing_target, budget, check_trials)
             for s in seeds]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_experiment_task, tasks))
    return [_experiment_task(t) for t in tasks]


def _experiment_task(task) -> ExperimentReport:
    n, p, seed, alpha, packing_target, budget, check_trials = task
    return run_single_experiment(n, p, seed, alpha=alpha, packing_target=packing_target,
                                 budget=budget, check_trials=check_trials)
