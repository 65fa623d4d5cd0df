#!/usr/bin/env python3
"""Re-routing ray families: linkages, obstructions, and pebble moves.

A linkage reroutes each ray of a family onto a tail of another family
through disjoint connector paths, optionally avoiding a finite set X
except on the initial segments.  Inside the half grid the planar order of
the columns is an absolute obstruction: only monotone pairings are ever
realizable, at any window depth.  On the full grid the single fat end
lets pebble moves on the ray graph be realized as actual linkages, one
connector per move, composed beyond the region already used.
"""

import itertools

from pebblekit import (NoLinkageError, canonical_rays, chebyshev_ball,
                       check_linkage, find_linkage, make_world, ray_graph,
                       realize_transition, truncate)


def show(title):
    print(f"\n=== {title} ===")


hg = make_world("half-grid")
cols = canonical_rays(hg, 6)
t = truncate(hg, 8)

show("shifting three columns sideways")
lk = find_linkage(t, cols[:3], cols[3:6], set(), {0: 0, 1: 1, 2: 2})
for i, p in sorted(lk.paths.items()):
    coords = [t.coords[v] for v in p]
    print(f"walk {i}: switch {coords[0]} ... land {coords[-1]} "
          f"({len(p)} vertices)")
check_linkage(t, cols[:3], cols[3:6], lk)
print("independent checker: walks disjoint, tails ride out of the window")

show("the planar obstruction")
for perm in itertools.permutations(range(3)):
    sigma = {i: perm[i] for i in range(3)}
    try:
        find_linkage(t, cols[:3], cols[3:6], set(), sigma)
        verdict = "feasible"
    except NoLinkageError:
        verdict = "no linkage at this depth"
    print(f"columns (0,1,2) -> ({3 + perm[0]},{3 + perm[1]},{3 + perm[2]}): {verdict}")
print("only the order-preserving pairing survives: the end is linear.")

show("avoiding a ball")
ball = set(chebyshev_ball(t, 4))
lk = find_linkage(t, cols[:2], cols[2:4], ball, {0: 0, 1: 1})
print(f"connectors avoid all {len(ball)} ball vertices:",
      all(not (set(p[1:]) & ball) for p in lk.paths.values()))

show("full grid: pebble moves become linkages")
fg = make_world("full-grid")
tf = truncate(fg, 8)
rays = canonical_rays(fg, 3)
rg = ray_graph(fg, rays, d0=8)
print("ray graph of three directional rays:", sorted(rg.edges), "(a triangle)")
moves = [(0, 1), (2, 1), (2, 0), (1, 0)]
print("pebble plan on the ray graph:", " -> ".join(map(str, moves)))
lk = realize_transition(tf, rays, moves, set(chebyshev_ball(tf, 2)), rg=rg)
print("induced re-routing:", lk.sigma, " (pebbles swapped rays 0 and 1)")
check_linkage(tf, [rays[s] for s in moves[0]], rays, lk)
print("checker: composite connectors are disjoint and avoid the ball")
