#!/usr/bin/env python3
"""A tour of the pebble-pushing game on small finite graphs.

Labelled pebbles sit on distinct vertices; a move slides one pebble along
an edge onto an unoccupied vertex.  The interesting question is which
states can reach which: on a path the pebbles can never change their
order, on a star two pebbles can swap around the hub, and on a cycle the
pebbles can only rotate.
"""

from pebblekit import Graph, is_achievable, legal_moves, reachable_states, solve


def show(title):
    print(f"\n=== {title} ===")


path3 = Graph.from_edges(3, [(0, 1), (1, 2)])
show("path 0-1-2, pebbles on (0, 1)")
print("legal moves:", legal_moves(path3, (0, 1)))
print("can (0,1) become (1,2)?", is_achievable(path3, (0, 1), (1, 2)))
print("can (0,1) become (1,0)?", is_achievable(path3, (0, 1), (1, 0)),
      " <- a path preserves the pebbles' order")
print("everything reachable from (0,1):", sorted(reachable_states(path3, (0, 1))))

show("a star: swap two pebbles around the hub")
star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])  # hub 0
plan = solve(star, (1, 2), (2, 1))
print(f"swap plan in {len(plan) - 1} moves:")
for state in plan:
    print("   ", state)

show("a 4-cycle: swapping adjacent pebbles takes a rotation")
c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
plan = solve(c4, (0, 1), (1, 0))
print(f"shortest swap: {len(plan) - 1} moves")
print("   ", " -> ".join(map(str, plan)))

show("no free vertex, no moves")
k3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
print("triangle fully loaded:", sorted(reachable_states(k3, (0, 1, 2))))
