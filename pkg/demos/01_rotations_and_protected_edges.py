#!/usr/bin/env python3
"""Walk through rotations, endpoint sets, and edge protection on tiny graphs.

A rotation pivots a path around a chord from its endpoint: the suffix past
the pivot flips, one path edge breaks, and a new endpoint appears. Locked
edges are never broken; that single rule is what lets the cover pipeline
drag a matching through an entire Hamilton cycle search unharmed.
"""

from hamcover import (
    RotationConstraints,
    RotationState,
    endpoint_set,
    find_hamilton_cycle,
    rotate,
)
from hamcover.graph import build_graph, complete_graph, cycle_graph, cycle_edges

# C5 plus one chord (4,1): the path 0-1-2-3-4 can rotate around that chord
G = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 1)])
state = RotationState(path=[0, 1, 2, 3, 4], fixed_endpoint=0)
print("start path:   ", state.path)

rotated = rotate(G, state, pivot=1)
print("after pivot 1:", rotated.path, "(broke", rotated.history[0][1], ")")

# the same rotation is illegal if the broken edge is locked
locked = RotationConstraints(locked={(1, 2)})
try:
    rotate(G, state, pivot=1, constraints=locked)
except Exception as exc:
    print("with (1,2) locked:", exc)

# endpoint sets: all endpoints reachable by rotations fixing vertex 0
C5 = cycle_graph(5)
es = endpoint_set(C5, [0, 1, 2, 3, 4], fixed=0)
print("\nC5 endpoints reachable with 0 fixed:", sorted(es.endpoints))
es = endpoint_set(C5, [0, 1, 2, 3, 4], fixed=0,
                  constraints=RotationConstraints(locked={(0, 1)}))
print("same but (0,1) locked:              ", sorted(es.endpoints))

# the payoff: a Hamilton cycle of K6 forced through a perfect matching
K6 = complete_graph(6)
required = {(0, 1), (2, 3), (4, 5)}
res = find_hamilton_cycle(K6, RotationConstraints(locked=required, soft=required))
print("\nK6 cycle through the matching:", res.cycle)
print("matching edges on the cycle:  ", sorted(required & cycle_edges(res.cycle)))
