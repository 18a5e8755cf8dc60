import math
import random

from hamcover.cover import (
    cover_graph,
    cover_matching,
    cover_matching_once,
    extract_packing,
    greedy_edge_coloring,
    greedy_maximal_matching,
    matching_chunk_cap,
    run_gnp_experiment,
    run_single_experiment,
)
from hamcover.gnp import RngSeed, expander_params_for_gnp, sample_gnp
from hamcover.graph import (
    build_graph,
    complete_graph,
    cycle_graph,
    cycle_edges,
    is_hamilton_cycle,
    petersen_graph,
)
from hamcover.oracle import held_karp_hamiltonian, validate_cover


def test_coloring_triangle():
    classes = greedy_edge_coloring(cycle_graph(3))
    assert len(classes) == 3
    assert all(len(c) == 1 for c in classes)


def test_coloring_perfect_matching_single_class():
    G = build_graph(6, [(0, 1), (2, 3), (4, 5)])
    classes = greedy_edge_coloring(G)
    assert len(classes) == 1
    assert classes[0] == frozenset([(0, 1), (2, 3), (4, 5)])


def test_coloring_k4_within_bound():
    classes = greedy_edge_coloring(complete_graph(4))
    assert len(classes) <= 2 * 3 - 1
    _assert_proper(complete_graph(4), classes)


def _assert_proper(G, classes):
    union = set()
    for cls in classes:
        touched = set()
        for u, v in cls:
            assert G.has_edge(u, v)
            assert u not in touched and v not in touched
            touched.update((u, v))
        assert not (union & cls)
        union |= cls
    assert union == set(G.edges())


def test_coloring_random_graphs_proper_and_bounded():
    for trial in range(50):
        G = sample_gnp(random.Random(trial).randint(4, 40), 0.4, RngSeed(7000, trial))
        classes = greedy_edge_coloring(G)
        if G.m == 0:
            assert classes == []
            continue
        assert len(classes) <= 2 * G.max_degree() - 1
        _assert_proper(G, classes)


def test_extract_packing_k5_decomposes():
    # odd complete graphs decompose into (n-1)/2 Hamilton cycles
    packing = extract_packing(complete_graph(5), target=2)
    assert packing.achieved == 2
    assert packing.residual.m == 0
    edges = [e for c in packing.cycles for e in cycle_edges(c)]
    assert len(edges) == len(set(edges)) == 10


def test_extract_packing_c5_shortfall():
    packing = extract_packing(cycle_graph(5), target=2)
    assert packing.achieved == 1
    assert packing.residual.m == 0
    assert "degree" in packing.stopped


def test_extract_packing_zero_target():
    G = complete_graph(6)
    packing = extract_packing(G, target=0)
    assert packing.achieved == 0
    assert packing.residual == G


def test_packing_cycles_edge_disjoint_fuzz():
    for trial in range(15):
        G = sample_gnp(32, 0.5, RngSeed(950, trial))
        packing = extract_packing(G, target=G.min_degree() // 2)
        seen = set()
        for c in packing.cycles:
            es = cycle_edges(c)
            assert not (seen & es)
            assert is_hamilton_cycle(G, c)
            seen |= es


def test_cover_matching_once_k6():
    once = cover_matching_once(complete_graph(6), {(0, 1), (2, 3), (4, 5)}, alpha=0.5)
    assert once.cycle is not None
    assert once.uncovered == frozenset()


def test_cover_matching_once_empty_matching():
    once = cover_matching_once(complete_graph(6), set(), alpha=0.5)
    assert once.cycle is not None and once.uncovered == frozenset()


def test_cover_matching_once_petersen_fails():
    assert held_karp_hamiltonian(petersen_graph()).value is False
    once = cover_matching_once(petersen_graph(), {(0, 1)}, alpha=0.3)
    assert once.cycle is None and once.failure


def test_cover_matching_k6():
    mc = cover_matching(complete_graph(6), {(0, 1), (2, 3), (4, 5)}, alpha=0.5)
    assert mc.ok and len(mc.cycles) >= 1
    covered = set()
    for c in mc.cycles:
        covered |= cycle_edges(c)
    assert {(0, 1), (2, 3), (4, 5)} <= covered


def test_cover_matching_empty():
    mc = cover_matching(complete_graph(6), set(), alpha=0.5)
    assert mc.ok and mc.cycles == []


def test_cover_matching_on_sample_covers_every_edge():
    G = sample_gnp(128, 0.5, RngSeed(1234))
    M = greedy_maximal_matching(G)
    alpha = expander_params_for_gnp(128, 0.5).alpha
    mc = cover_matching(G, M, alpha)
    assert mc.ok
    covered = set()
    for c in mc.cycles:
        assert is_hamilton_cycle(G, c)
        covered |= cycle_edges(c)
    assert M <= covered


def test_chunk_cap_floors_at_one():
    assert matching_chunk_cap(128, 0.2) == 1
    assert matching_chunk_cap(10 ** 6, 0.5) == int(0.125 * 10 ** 6 / 9200)


def test_cover_graph_walecki_k5():
    out = cover_graph(complete_graph(5), alpha=0.5)
    assert out.ok
    assert out.certificate.cover_size == 2 == math.ceil(4 / 2)
    assert validate_cover(complete_graph(5), out.certificate.cycles).ok


def test_cover_graph_c5_single_cycle():
    out = cover_graph(cycle_graph(5), alpha=0.5)
    assert out.ok and out.certificate.cover_size == 1


def test_cover_graph_petersen_fails_with_phase():
    out = cover_graph(petersen_graph(), alpha=0.3)
    assert not out.ok
    assert out.failure_phase in ("packing", "covering")
    assert out.failure_detail


def test_cover_graph_rejects_degenerate_inputs():
    assert cover_graph(build_graph(4, [(0, 1), (2, 3)]), 0.5).failure_phase == "precheck"
    assert cover_graph(build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)]), 0.5).failure_phase == "precheck"


def test_cover_certificate_structure():
    G = sample_gnp(48, 0.4, RngSeed(2222))
    out = cover_graph(G, alpha=0.4)
    assert out.ok
    cert = out.certificate
    v = validate_cover(G, cert.cycles)
    assert v.ok
    assert cert.min_coverage() >= 1
    assert cert.cover_size >= math.ceil(G.max_degree() / 2)
    # packing prefix is edge disjoint
    seen = set()
    for c in cert.cycles[: cert.h]:
        es = cycle_edges(c)
        assert not (seen & es)
        seen |= es


def test_complete_graph_experiment_tight():
    # measured on the deterministic instance: greedy packing decomposes
    # K128 down to a perfect matching (63 = floor(127/2) cycles), one more
    # cycle covers it, landing exactly on the ceil(Delta/2) = 64 bound
    r = run_single_experiment(128, 1.0, RngSeed(0, 0))
    assert r.valid
    assert r.h == 63
    assert r.cover_size == 64 == math.ceil(127 / 2)
    assert math.isclose(r.ratio, 1.0)


def test_run_single_experiment_report_consistency():
    r = run_single_experiment(64, 0.5, RngSeed(5, 0))
    assert r.valid and r.error is None
    assert r.cover_size >= r.h >= 1
    assert math.isclose(r.ratio, r.cover_size / (64 * 0.5 / 2))
    assert r.m > 0 and r.delta_max >= r.delta_min


def test_run_experiment_records_failures_and_continues():
    # np = 0.8: samples are nearly edgeless, every seed fails but reports flow
    reports = run_gnp_experiment(16, 0.05, seeds=[0, 1], base_seed=9)
    assert len(reports) == 2
    assert all(not r.valid and r.error for r in reports)


def test_run_experiment_seed_order_stable():
    a = run_gnp_experiment(32, 0.5, seeds=[0, 1, 2], base_seed=4)
    b = run_gnp_experiment(32, 0.5, seeds=[0, 1, 2], base_seed=4)
    assert [r.cover_size for r in a] == [r.cover_size for r in b]
    assert [r.stream for r in a] == [0, 1, 2]
