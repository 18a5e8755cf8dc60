#!/usr/bin/env python3
"""Sample a seeded G(n,p), compute its expansion profile, and hunt witnesses.

The small property asks every set A of size <= g to have an external
neighborhood of at least s|A| vertices; the large property asks any two
disjoint l-sets to span an edge. Both are falsified by witness search and
proven (at toy sizes) by the exhaustive oracle; together they force
logarithmic diameter.
"""

from hamcover import (
    RngSeed,
    diameter_bound_check,
    exhaustive_expansion_check,
    expander_params_for_gnp,
    large_expansion_witness_search,
    sample_gnp,
    small_expansion_witness_search,
)
from hamcover.graph import cycle_graph, diameter

n, p = 256, 0.3
G = sample_gnp(n, p, RngSeed(1))
params = expander_params_for_gnp(n, p)
print(f"G({n}, {p}): m={G.m}, degrees {G.min_degree()}..{G.max_degree()}")
print(f"profile: s={params.s:.3f}  g={params.g:.2f}  l={params.l:.4f}  "
      f"alpha={params.alpha:.4f}")
if not params.asymptotic_regime:
    print("frame l < 1: asymptotic regime not reached at this n, clamped to 1")

small = small_expansion_witness_search(G, params.s, params.g, seed=RngSeed(2))
print(f"\nsmall property S(s, g): {small.verdict} after {small.trials} trials")
if small.witness:
    print("  witness:", sorted(small.witness))

# the clamped frame l=1 demands an edge between every vertex pair, which
# only a complete graph satisfies; a frame of n/16 shows the sampled search
large = large_expansion_witness_search(G, params.frame_clamped, seed=RngSeed(3))
print(f"large property L({params.frame_clamped:g}):   {large.verdict} "
      f"(clamped frame is hopeless below the asymptotic regime)")
large = large_expansion_witness_search(G, n / 16, seed=RngSeed(3))
print(f"large property L({n / 16:g}):  {large.verdict} after {large.trials} trials")

check = diameter_bound_check(G, params.s)
print(f"diameter {check.diam} vs bound 2 ln n/ln s + 3 = {check.bound:.2f}: "
      f"{'ok' if check.ok else 'violated'}")

# tiny n: the exhaustive oracle settles both properties exactly
C8 = cycle_graph(8)
ex_small, ex_large = exhaustive_expansion_check(C8, s=2, g=2, l=3)
print(f"\nC8 exactly: S(2,2) holds={ex_small.holds} witness={ex_small.witness}, "
      f"L(3) holds={ex_large.holds}")
print("C8 diameter:", diameter(C8))
