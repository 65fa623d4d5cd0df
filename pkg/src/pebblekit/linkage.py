"""Linkages between ray families, and their realization from pebble moves.

A linkage re-routes a family of rays R into a family S: walk i rides its
own ray to a switch point, follows a finite connector path, then rides the
tail of the target ray out of the window.  The walks must be pairwise
disjoint, and a linkage "after X" confines X to the pre-switch segments.

``find_linkage`` decides existence exactly by encoding the walk system as
a 0/1 flow problem, one unit of flow per walk through a layered digraph
(prefix chain, free connector movement, committed tail chains) with a
shared unit capacity on every window vertex, solved by branch-and-bound.
Infeasibility is always reported as depth-limited: a window that admits no
linkage says nothing about deeper windows.

``check_linkage`` re-walks a claimed linkage coordinate by coordinate and
is deliberately independent of the search.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from .errors import (LinkageCheckError, NoLinkageError, PebbleKitError,
                     ResourceCapError, ValidationError)
from .disjoint_paths import disjoint_paths_exist
from .pebbles import MoveSequence
from .rays import RayGraph, ray_graph
from .worlds import RaySpec, Truncation

DP_STATE_CAP = 6_000


@dataclass
class Linkage:
    """Result of re-routing: ``sigma`` maps source list position to target
    list position; ``paths[i]`` holds the window vertices of walk i's
    connector from switch point to landing point inclusive, empty when the
    walk just rides its own ray; ``after`` is the avoided vertex set X."""

    sigma: dict[int, int]
    paths: dict[int, tuple[int, ...]]
    after: frozenset[int]

    def to_json_dict(self, t: Truncation) -> dict:
        return {
            "sigma": {str(i): j for i, j in sorted(self.sigma.items())},
            "paths": {str(i): [list(t.coords[v]) for v in p]
                      for i, p in sorted(self.paths.items())},
            "after": [list(t.coords[v]) for v in sorted(self.after)],
        }


def _ray_window_positions(t: Truncation, r: RaySpec) -> list[int]:
    pos = r.positions_in(t)
    if not pos:
        raise ValidationError(f"ray {r.index} does not enter the window")
    return pos


def _validate_families(t: Truncation, source: list[RaySpec], target: list[RaySpec]):
    src_pos = [_ray_window_positions(t, r) for r in source]
    tgt_pos = [_ray_window_positions(t, r) for r in target]
    for fam, name in ((src_pos, "source"), (tgt_pos, "target")):
        for a, b in itertools.combinations(range(len(fam)), 2):
            if set(fam[a]) & set(fam[b]):
                raise ValidationError(f"{name} rays {a} and {b} intersect in the window")
    for i, rp in enumerate(src_pos):
        for j, sp in enumerate(tgt_pos):
            if rp != sp and set(rp) & set(sp):
                raise ValidationError(
                    f"source ray {i} and target ray {j} overlap without being identical; "
                    "families must be vertex-disjoint or share whole rays")
    return src_pos, tgt_pos


# ---------------------------------------------------------------------------
# Exact decision: reduce to vertex-disjoint paths with fixed terminals
# ---------------------------------------------------------------------------

def _window_chord_keys(t: Truncation):
    """Boundary-cycle positions for the planarity prune on grid windows.

    The sweep is lexicographic in (x, y), so the unprocessed region's
    boundary runs bottom rim, right rim, top rim, then the frontier
    staircase downward.  Non-grid worlds get no keys.
    """
    kind = t.world.kind
    d = t.depth
    if kind == "full-grid":
        min_x, max_x, min_y, max_y = -d, d, -d, d
    elif kind in ("half-grid", "hex-half-grid"):
        min_x, max_x, min_y, max_y = -d, d, 0, d
    else:
        return None, None
    keys, rim = [], set()
    for i, (a, b) in enumerate(t.coords):
        if b == min_y:
            keys.append((0, a))
        elif a == max_x:
            keys.append((1, b))
        elif b == max_y:
            keys.append((2, -a))
        else:
            keys.append((3, -b, a))
        if a in (min_x, max_x) or b in (min_y, max_y):
            rim.add(i)
    return keys, rim


def _decide_fixed_sigma(t: Truncation, src_pos: list[list[int]],
                        tgt_pos: list[list[int]], X: frozenset[int],
                        sigma: dict[int, int],
                        state_cap: int = DP_STATE_CAP) -> bool | None:
    """Exact feasibility of a linkage with the given pairing, or None when
    the state space exceeds the cap.

    A walk is its forced prefix (up to the last X hit on its source ray)
    followed by any simple path to the last in-window vertex of its target
    ray: once X and the forced prefixes are removed from the graph, the
    remaining freedom is exactly a family of vertex-disjoint paths between
    fixed terminals.
    """
    n = t.graph.n
    blocked: set[int] = set(X)
    terminals: list[tuple[int, int]] = []
    for i, rp in enumerate(src_pos):
        last_x = max((p for p, v in enumerate(rp) if v in X), default=-1)
        start = max(last_x, 0)
        s = rp[start]
        e = tgt_pos[sigma[i]][-1]
        terminals.append((s, e))
        blocked.update(rp[:start])
        blocked.discard(s)
    seen: set[int] = set()
    for i, (s, e) in enumerate(terminals):
        for v in (s, e) if s != e else (s,):
            if v in seen:
                return False  # two walks need the same vertex as an endpoint
            seen.add(v)
    for i, (s, e) in enumerate(terminals):
        if (s in blocked) or (e in blocked):
            return False      # a forced prefix or X claims another terminal
    order = list(range(n))
    if t.world.kind in ("product-Z", "product-N", "dominated-ray"):
        order.sort(key=lambda v: (t.coords[v][1], t.coords[v][0]))
    keys, rim = _window_chord_keys(t)
    adj = t.graph.adjacency()
    try:
        return disjoint_paths_exist(n, adj, order, terminals, blocked,
                                    state_cap=state_cap, chord_keys=keys,
                                    rim=rim)
    except ResourceCapError:
        return None


# ---------------------------------------------------------------------------
# Search with witness extraction
# ---------------------------------------------------------------------------

def find_linkage(t: Truncation, source: list[RaySpec], target: list[RaySpec],
                 x_vertices: set[int] = frozenset(),
                 sigma: dict[int, int] | None = None) -> Linkage:
    """Find a linkage after X inside the window, exactly.

    With ``sigma`` supplied the returned linkage induces exactly that
    injection or NoLinkageError is raised; with ``sigma`` omitted any
    induced injection is acceptable.  The decision is exact for the given
    window: infeasibility means no walk system exists at this depth, and
    is reported as depth-limited, never as a statement about the infinite
    world.

    Fixed pairings are decided first by the disjoint-paths sweep (with a
    planarity prune on grid windows), then a 0/1-flow search extracts a
    witness; free pairings go straight to the flow search.
    """
    nR, nS = len(source), len(target)
    if nR == 0:
        raise ValidationError("source family is empty")
    if nR > nS:
        raise ValidationError(f"need |source| <= |target|, got {nR} > {nS}")
    X = frozenset(x_vertices)
    for v in X:
        if not (0 <= v < t.graph.n):
            raise ValidationError(f"X vertex {v} outside the window")
    if sigma is not None:
        if sorted(sigma) != list(range(nR)):
            raise ValidationError("sigma must map every source position")
        if len(set(sigma.values())) != nR:
            raise ValidationError("sigma must be injective")
        for j in sigma.values():
            if not (0 <= j < nS):
                raise ValidationError(f"sigma target {j} out of range")
    src_pos, tgt_pos = _validate_families(t, source, target)
    if sigma is not None:
        decision = _decide_fixed_sigma(t, src_pos, tgt_pos, X, sigma)
        if decision is False:
            raise NoLinkageError(
                f"no linkage at window depth {t.depth} (search exhausted)",
                t.depth)
    adj = t.graph.adjacency()

    last_x_on = [max((p for p, v in enumerate(pos) if v in X), default=-1)
                 for pos in src_pos]

    # ---- node layout ------------------------------------------------------
    # per walk i: SRC, SNK, P_(i,l), G_(i,v) for v not in X,
    # T_(i,j,l) for allowed targets j and positions l beyond X on S_j.
    node_ids: dict[tuple, int] = {}
    node_phys: list[int] = []          # physical window vertex, -1 for virtual

    def node(key: tuple, phys: int) -> int:
        nid = node_ids.get(key)
        if nid is None:
            nid = len(node_ids)
            node_ids[key] = nid
            node_phys.append(phys)
        return nid

    allowed: list[list[int]] = [[sigma[i]] if sigma is not None else list(range(nS))
                                for i in range(nR)]
    arcs: list[tuple[int, int, int]] = []       # (walk, from_node, to_node)
    commit_of_arc: dict[int, tuple[int, int]] = {}  # arc idx -> (walk, target j)
    connector_arcs: set[int] = set()            # costlier, so pure rides win ties

    for i in range(nR):
        rp = src_pos[i]
        minswitch = max(last_x_on[i], 0)
        src_n = node(("src", i), -1)
        snk_n = node(("snk", i), -1)
        p_nodes = [node(("P", i, l), rp[l]) for l in range(len(rp))]
        arcs.append((i, src_n, p_nodes[0]))
        for l in range(len(rp) - 1):
            arcs.append((i, p_nodes[l], p_nodes[l + 1]))
        g_nodes: dict[int, int] = {}
        for v in range(t.graph.n):
            if v not in X:
                g_nodes[v] = node(("G", i, v), v)
        t_nodes: dict[tuple[int, int], int] = {}
        for j in allowed[i]:
            sp = tgt_pos[j]
            for l in range(len(sp)):
                if sp[l] not in X:
                    t_nodes[(j, l)] = node(("T", i, j, l), sp[l])
            for l in range(len(sp) - 1):
                if (j, l) in t_nodes and (j, l + 1) in t_nodes:
                    arcs.append((i, t_nodes[(j, l)], t_nodes[(j, l + 1)]))
            if (j, len(sp) - 1) in t_nodes:
                arcs.append((i, t_nodes[(j, len(sp) - 1)], snk_n))
            if sp == rp:
                # pure ride: commit to the identical ray by exiting the window
                a = (i, p_nodes[-1], snk_n)
                arcs.append(a)
                commit_of_arc[len(arcs) - 1] = (i, j)
        # leaving the prefix
        tgt_vertex_pos = {}
        for j in allowed[i]:
            for l, v in enumerate(tgt_pos[j]):
                tgt_vertex_pos.setdefault(v, []).append((j, l))
        for l in range(minswitch, len(rp)):
            for w in adj[rp[l]]:
                if w in g_nodes:
                    arcs.append((i, p_nodes[l], g_nodes[w]))
                    connector_arcs.add(len(arcs) - 1)
                for (j, lt) in tgt_vertex_pos.get(w, ()):
                    if (j, lt) in t_nodes:
                        arcs.append((i, p_nodes[l], t_nodes[(j, lt)]))
                        commit_of_arc[len(arcs) - 1] = (i, j)
                        connector_arcs.add(len(arcs) - 1)
        # free movement and landings
        for v, gv in g_nodes.items():
            for w in adj[v]:
                if w in g_nodes:
                    arcs.append((i, gv, g_nodes[w]))
                    connector_arcs.add(len(arcs) - 1)
                for (j, lt) in tgt_vertex_pos.get(w, ()):
                    if (j, lt) in t_nodes:
                        arcs.append((i, gv, t_nodes[(j, lt)]))
                        commit_of_arc[len(arcs) - 1] = (i, j)
                        connector_arcs.add(len(arcs) - 1)

    n_nodes = len(node_ids)
    n_arcs = len(arcs)

    # ---- constraints -------------------------------------------------------
    rows_eq: list[int] = []
    cols_eq: list[int] = []
    vals_eq: list[float] = []
    b_eq = np.zeros(n_nodes)
    for a_idx, (i, u, v) in enumerate(arcs):
        rows_eq.append(u); cols_eq.append(a_idx); vals_eq.append(1.0)
        rows_eq.append(v); cols_eq.append(a_idx); vals_eq.append(-1.0)
    for i in range(nR):
        b_eq[node_ids[("src", i)]] = 1.0
        b_eq[node_ids[("snk", i)]] = -1.0
    A_eq = sparse.csc_matrix((vals_eq, (rows_eq, cols_eq)), shape=(n_nodes, n_arcs))

    rows_ub: list[int] = []
    cols_ub: list[int] = []
    n_ub = 0
    # unit capacity per physical vertex: count arcs entering any copy of it
    phys_row: dict[int, int] = {}
    for a_idx, (i, u, v) in enumerate(arcs):
        pv = node_phys[v]
        if pv >= 0:
            row = phys_row.setdefault(pv, len(phys_row))
            rows_ub.append(row); cols_ub.append(a_idx)
    n_ub = len(phys_row)
    # each target ray committed to at most once
    commit_row: dict[int, int] = {}
    for a_idx, (wi, j) in commit_of_arc.items():
        row = commit_row.setdefault(j, n_ub + len(commit_row))
        rows_ub.append(row); cols_ub.append(a_idx)
    n_ub += len(commit_row)
    A_ub = sparse.csc_matrix((np.ones(len(rows_ub)), (rows_ub, cols_ub)),
                             shape=(n_ub, n_arcs))

    cost = np.ones(n_arcs)
    for a_idx in connector_arcs:
        cost[a_idx] = 3.0
    res = milp(
        c=cost,
        constraints=[
            LinearConstraint(A_eq, b_eq, b_eq),
            LinearConstraint(A_ub, -np.inf, np.ones(n_ub)),
        ],
        integrality=np.ones(n_arcs),
        bounds=Bounds(0, 1),
    )
    if res.status == 2:
        raise NoLinkageError(
            f"no linkage at window depth {t.depth} (search exhausted)", t.depth)
    if res.status != 0 or res.x is None:
        raise PebbleKitError(f"linkage search did not terminate: {res.message}")

    chosen = res.x > 0.5
    out_arc: dict[int, list[int]] = {}
    for a_idx, (i, u, v) in enumerate(arcs):
        if chosen[a_idx]:
            out_arc.setdefault(u, []).append(a_idx)

    sigma_out: dict[int, int] = {}
    paths: dict[int, tuple[int, ...]] = {}
    inv_nodes = {nid: key for key, nid in node_ids.items()}
    for i in range(nR):
        cur = node_ids[("src", i)]
        trail: list[tuple] = []
        while True:
            nxts = out_arc.get(cur, [])
            if not nxts:
                raise LinkageCheckError("solver returned a broken walk")
            a_idx = nxts.pop(0)
            cur = arcs[a_idx][2]
            key = inv_nodes[cur]
            if key[0] == "snk":
                break
            trail.append(key)
        switch = None
        for pos, key in enumerate(trail):
            if key[0] != "P":
                switch = pos
                break
        if switch is None:
            # pure ride to the window rim
            landed = next(j for j in allowed[i] if tgt_pos[j] == src_pos[i])
            sigma_out[i] = landed
            paths[i] = ()
            continue
        first = trail[switch]
        j = first[2] if first[0] == "T" else None
        path_vertices = [src_pos[i][trail[switch - 1][2]]]
        for key in trail[switch:]:
            if key[0] == "G":
                path_vertices.append(key[2])
            else:
                j = key[2]
                path_vertices.append(tgt_pos[j][key[3]])
                break
        sigma_out[i] = j
        paths[i] = tuple(path_vertices)
    return Linkage(sigma=sigma_out, paths=paths, after=X)


# ---------------------------------------------------------------------------
# Independent checker
# ---------------------------------------------------------------------------

def linkage_walks(t: Truncation, source: list[RaySpec], target: list[RaySpec],
                  linkage: Linkage) -> list[list[int]]:
    """Reconstruct the in-window transitioned walks (window vertex lists)."""
    src_pos = [_ray_window_positions(t, r) for r in source]
    tgt_pos = [_ray_window_positions(t, r) for r in target]
    walks: list[list[int]] = []
    for i in range(len(source)):
        if i not in linkage.sigma:
            raise LinkageCheckError(f"walk {i} missing from sigma")
        j = linkage.sigma[i]
        path = list(linkage.paths.get(i, ()))
        if not path:
            if src_pos[i] != tgt_pos[j]:
                raise LinkageCheckError(
                    f"walk {i} has an empty connector but rides a different ray")
            walks.append(list(src_pos[i]))
            continue
        if path[0] not in src_pos[i]:
            raise LinkageCheckError(f"walk {i}: connector must start on its source ray")
        if path[-1] not in tgt_pos[j]:
            raise LinkageCheckError(f"walk {i}: connector must end on its target ray")
        a = src_pos[i].index(path[0])
        b = tgt_pos[j].index(path[-1])
        walk = src_pos[i][:a] + path + tgt_pos[j][b + 1:]
        walks.append(walk)
    return walks


def check_linkage(t: Truncation, source: list[RaySpec], target: list[RaySpec],
                  linkage: Linkage) -> list[list[int]]:
    """Verify a linkage literally; raises LinkageCheckError on any violation.

    Checks: sigma is injective; every walk is a path in the window (adjacent
    consecutive vertices, no repeats); walks are pairwise vertex-disjoint;
    every walk leaves the window along its target ray; X meets each source
    ray only before the switch point and meets no other walk vertex.
    """
    X = linkage.after
    src_pos = [_ray_window_positions(t, r) for r in source]
    tgt_pos = [_ray_window_positions(t, r) for r in target]
    vals = sorted(linkage.sigma.values())
    if len(set(vals)) != len(vals):
        raise LinkageCheckError("sigma is not injective")
    walks = linkage_walks(t, source, target, linkage)
    for i, walk in enumerate(walks):
        if len(set(walk)) != len(walk):
            raise LinkageCheckError(f"walk {i} repeats a vertex")
        for u, v in zip(walk, walk[1:]):
            if not t.graph.has_edge(u, v):
                raise LinkageCheckError(
                    f"walk {i}: {t.coords[u]} and {t.coords[v]} not adjacent")
        j = linkage.sigma[i]
        tail_last = tgt_pos[j][-1]
        if walk[-1] != tail_last:
            raise LinkageCheckError(f"walk {i} does not ride its target ray to the rim")
        # prefix segment of the walk along the source ray
        path = linkage.paths.get(i, ())
        if path:
            a = src_pos[i].index(path[0])
        else:
            a = len(src_pos[i]) - 1
        prefix = set(src_pos[i][:a + 1])
        # X on the source ray must sit inside the prefix
        for p, v in enumerate(src_pos[i]):
            if v in X and p > a:
                raise LinkageCheckError(
                    f"walk {i}: X meets its source ray beyond the switch point")
        for v in walk:
            if v in X and v not in prefix:
                raise LinkageCheckError(
                    f"walk {i} uses X vertex {t.coords[v]} beyond its prefix")
    for a_i, b_i in itertools.combinations(range(len(walks)), 2):
        inter = set(walks[a_i]) & set(walks[b_i])
        if inter:
            v = min(inter)
            raise LinkageCheckError(
                f"walks {a_i} and {b_i} share vertex {t.coords[v]}")
    return walks


# ---------------------------------------------------------------------------
# Realizing a pebble move sequence as a linkage
# ---------------------------------------------------------------------------

def realize_transition(t: Truncation, rays: list[RaySpec], moves: MoveSequence,
                       x_vertices: set[int] = frozenset(),
                       rg: RayGraph | None = None) -> Linkage:
    """Compose one single-switch linkage per pebble move.

    ``moves`` is a sequence of game states on the ray indices (positions in
    ``rays``); each move sends one pebble from its ray to an unoccupied ray
    adjacent in the ray graph.  Every move consumes one connecting path
    strictly beyond the region used so far, so the composite walks stay
    disjoint.  The returned linkage maps source position i (the i-th entry
    of the initial state) to the i-th entry of the final state.
    """
    if not moves:
        raise ValidationError("move sequence must contain at least one state")
    m = len(rays)
    k = len(moves[0])
    for st in moves:
        if len(st) != k or len(set(st)) != k:
            raise ValidationError(f"bad game state {st}")
        for r in st:
            if not (0 <= r < m):
                raise ValidationError(f"state mentions ray {r}, have {m} rays")
    if rg is None:
        rg = ray_graph(t.world, rays, d0=max(4, t.depth))
    rg_edges = {(min(a, b), max(a, b)) for a, b in rg.edges}
    for s1, s2 in zip(moves, moves[1:]):
        diff = [i for i in range(k) if s1[i] != s2[i]]
        if len(diff) != 1:
            raise ValidationError(f"{s1} -> {s2} is not a single-pebble move")
        l = diff[0]
        if s2[l] in s1:
            raise ValidationError(f"{s1} -> {s2} moves onto an occupied ray")
        if (min(s1[l], s2[l]), max(s1[l], s2[l])) not in rg_edges:
            raise ValidationError(
                f"{s1} -> {s2} moves along a non-edge of the ray graph")

    X = frozenset(x_vertices)
    ray_pos = [_ray_window_positions(t, r) for r in rays]
    for a, b in itertools.combinations(range(m), 2):
        if set(ray_pos[a]) & set(ray_pos[b]):
            raise ValidationError(f"rays {a} and {b} intersect in the window")
    last_x = [max((p for p, v in enumerate(pos) if v in X), default=-1)
              for pos in ray_pos]
    all_ray_vertices = set().union(*(set(p) for p in ray_pos))
    adj = t.graph.adjacency()

    cur_ray = list(moves[0])
    cur_pos = [-1] * k                   # last committed position on own ray
    used_bound = [-1] * m                # highest committed position per ray
    committed: set[int] = set()
    # per slot: list of (ray_departed, switch_pos, connector_vertices, ray_landed,
    # landing_pos); connector vertices run switch..landing inclusive
    hops: list[list[tuple[int, int, list[int], int, int]]] = [[] for _ in range(k)]

    for s1, s2 in zip(moves, moves[1:]):
        l = next(i for i in range(k) if s1[i] != s2[i])
        a, b = s1[l], s2[l]
        src_from = max(cur_pos[l], last_x[a], 0)
        dst_from = max(used_bound[b], last_x[b]) + 1
        srcs = {ray_pos[a][p]: p for p in range(src_from, len(ray_pos[a]))
                if ray_pos[a][p] not in committed or p == cur_pos[l]}
        dsts = {ray_pos[b][p]: p for p in range(dst_from, len(ray_pos[b]))}
        if not srcs or not dsts:
            raise NoLinkageError(
                f"window depth {t.depth} exhausted while realizing a move", t.depth)
        free_set = {v for v in range(t.graph.n)
                    if v not in X and v not in committed and v not in all_ray_vertices}
        # BFS from all allowed switch points to the nearest allowed landing
        parent: dict[int, int | None] = {v: None for v in sorted(srcs)}
        queue = deque(sorted(srcs))
        hit = None
        for u in sorted(srcs):
            for w in adj[u]:
                if w in dsts:
                    parent[w] = u
                    hit = w
                    break
            if hit is not None:
                break
        while queue and hit is None:
            u = queue.popleft()
            for w in adj[u]:
                if w in parent:
                    continue
                if w in dsts:
                    parent[w] = u
                    hit = w
                    break
                if w in free_set:
                    parent[w] = u
                    queue.append(w)
        if hit is None:
            raise NoLinkageError(
                f"no connecting path at window depth {t.depth} for move "
                f"{s1} -> {s2}", t.depth)
        conn: list[int] = []
        node: int | None = hit
        while node is not None:
            conn.append(node)
            node = parent[node]
        conn.reverse()        # switch vertex ... landing vertex
        a_pos = srcs[conn[0]]
        b_pos = dsts[conn[-1]]
        ride = ray_pos[a][max(cur_pos[l], 0):a_pos + 1]
        committed.update(ride)
        committed.update(conn)
        hops[l].append((a, a_pos, conn, b, b_pos))
        used_bound[a] = max(used_bound[a], a_pos)
        used_bound[b] = max(used_bound[b], b_pos)
        cur_ray[l] = b
        cur_pos[l] = b_pos

    final = moves[-1]
    sigma = {i: final[i] for i in range(k)}
    paths: dict[int, tuple[int, ...]] = {}
    for i in range(k):
        if not hops[i]:
            paths[i] = ()
            continue
        # composite connector: first switch vertex through final landing,
        # riding each intermediate ray between landing and next switch
        out: list[int] = []
        for h_idx, (a, a_pos, conn, b, b_pos) in enumerate(hops[i]):
            if h_idx == 0:
                out.extend(conn)
            else:
                prev_b, prev_b_pos = hops[i][h_idx - 1][3], hops[i][h_idx - 1][4]
                assert prev_b == a
                # ride from the previous landing up to the new switch vertex,
                # whose connector repeats it as conn[0]
                out.extend(ray_pos[a][prev_b_pos + 1:a_pos + 1])
                out.extend(conn[1:])
        paths[i] = tuple(out)
    return Linkage(sigma=sigma, paths=paths, after=X)
