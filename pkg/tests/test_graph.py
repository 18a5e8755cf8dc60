import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamcover.graph import (
    GraphError,
    INFINITE,
    build_graph,
    canonical_cycle,
    complete_graph,
    cycle_graph,
    diameter,
    format_edge_list,
    induced_subgraph,
    neighborhood_of_set,
    parse_edge_list,
    path_graph,
    petersen_graph,
)
from hamcover.oracle import bfs_distances_reference


def test_build_complete_graph():
    G = build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert G.m == 6
    assert all(G.degree(v) == 3 for v in range(4))


def test_build_cycle_graph():
    G = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert G.m == 5
    assert all(G.degree(v) == 2 for v in range(5))


def test_build_dedup():
    G = build_graph(3, [(0, 1), (0, 1), (1, 2)])
    assert G.m == 2


def test_build_rejects_out_of_range():
    with pytest.raises(GraphError):
        build_graph(3, [(0, 3)])


def test_build_rejects_self_loop():
    with pytest.raises(GraphError):
        build_graph(3, [(1, 1)])


def test_neighborhood_excludes_set():
    C5 = cycle_graph(5)
    assert neighborhood_of_set(C5, {0}) == {1, 4}
    assert neighborhood_of_set(C5, {0, 1}) == {2, 4}
    assert neighborhood_of_set(C5, set(range(5))) == set()


def test_diameter_small_cases():
    assert diameter(complete_graph(4)) == 1
    assert diameter(cycle_graph(5)) == 2


def test_diameter_petersen_vs_reference_bfs():
    G = petersen_graph()
    ref = max(max(bfs_distances_reference(G, v)) for v in range(G.n))
    assert diameter(G) == ref == 2


def test_diameter_disconnected_is_infinite():
    G = build_graph(4, [(0, 1), (2, 3)])
    assert diameter(G) == INFINITE


def test_induced_subgraph_cases():
    K4 = complete_graph(4)
    H, to_sub, to_orig = induced_subgraph(K4, {0, 1, 3})
    assert H.n == 3 and H.m == 3
    assert to_orig == (0, 1, 3) and to_sub[3] == 2

    C5 = cycle_graph(5)
    H, _, _ = induced_subgraph(C5, {0, 1, 2})
    assert H.m == 2 and sorted(H.degrees()) == [1, 1, 2]

    H, _, _ = induced_subgraph(C5, set())
    assert H.n == 0 and H.m == 0


def test_induced_subgraph_full_is_identity():
    G = petersen_graph()
    H, to_sub, to_orig = induced_subgraph(G, range(G.n))
    assert H == G
    assert all(to_sub[v] == v for v in range(G.n))
    assert to_orig == tuple(range(G.n))


def test_edge_list_roundtrip():
    G = petersen_graph()
    text = format_edge_list(G)
    assert text.splitlines()[0] == "10 15"
    assert parse_edge_list(text) == G
    # writer output is sorted with u < v
    rows = [tuple(map(int, ln.split())) for ln in text.splitlines()[1:]]
    assert rows == sorted(rows) and all(u < v for u, v in rows)


def test_parse_rejects_garbage():
    with pytest.raises(GraphError):
        parse_edge_list("")
    with pytest.raises(GraphError):
        parse_edge_list("3\n0 1\n")
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(GraphError):
        parse_edge_list("3 1\n0 x\n")


def test_remove_edges():
    K4 = complete_graph(4)
    H = K4.remove_edges([(0, 1), (1, 0), (2, 3)])
    assert H.m == 4
    assert not H.has_edge(0, 1) and not H.has_edge(2, 3)
    assert K4.m == 6  # original untouched


def test_canonical_cycle():
    assert canonical_cycle((2, 3, 4, 0, 1)) == (0, 1, 2, 3, 4)
    assert canonical_cycle((3, 2, 1, 0, 4)) == (0, 1, 2, 3, 4)


@given(st.permutations(list(range(7))), st.integers(min_value=0, max_value=6),
       st.booleans())
@settings(max_examples=60, deadline=None)
def test_canonical_cycle_invariant_under_rotation_and_reflection(seq, shift, flip):
    rotated = seq[shift:] + seq[:shift]
    if flip:
        rotated = rotated[::-1]
    assert canonical_cycle(rotated) == canonical_cycle(seq)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=12))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return build_graph(n, edges)


@given(small_graphs(), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_neighborhood_property(G, rnd):
    size = rnd.randint(1, G.n)
    A = set(rnd.sample(range(G.n), size))
    N = neighborhood_of_set(G, A)
    assert not (N & A)
    for v in N:
        assert any(w in A for w in G.neighbors(v))
    for v in set(range(G.n)) - A - N:
        assert not any(w in A for w in G.neighbors(v))


@given(small_graphs(), st.integers(min_value=0, max_value=2 ** 30))
@settings(max_examples=40, deadline=None)
def test_diameter_relabeling_invariant(G, seed):
    perm = list(range(G.n))
    random.Random(seed).shuffle(perm)
    H = build_graph(G.n, [(perm[u], perm[v]) for u, v in G.edges()])
    assert diameter(G) == diameter(H)


@given(st.integers(min_value=2, max_value=40))
def test_diameter_complete(n):
    assert diameter(complete_graph(n)) == 1


def test_handshake_invariant():
    G = petersen_graph()
    assert sum(G.degrees()) == 2 * G.m
    assert diameter(path_graph(6)) == 5
