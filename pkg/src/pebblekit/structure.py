"""Group-level structure of the pebble-pushing game.

Two independent routes compute the pebble-permutation group:

* ``pebble_permutation_group`` harvests permutations directly from the
  breadth-first search of the labelled state space (every visited state
  over the start state's vertex set yields one), which is the definition
  made executable.

* The analyzer behind ``is_k_pebble_win`` and the exhaustive sweep works
  on the much smaller space of unordered pebble configurations.  The
  labelled state space is a covering of that configuration graph, so the
  group is generated by the loop transports of the non-tree edges of any
  spanning tree (one permutation per non-tree edge).  This is orders of
  magnitude cheaper and is cross-checked against the direct route in the
  test suite.

A graph is k-pebble-win exactly when one (equivalently, every) state's
group is all of S_k and the configuration graph is connected; on a
connected graph any configuration can reach any other, so the group
condition is the live one.
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass
from math import comb, factorial

from .errors import PebbleKitError, StateCapExceeded, ValidationError
from .graphs import (Graph, bridges, graph_from_mask, is_connected,
                     is_cycle_graph, maximal_bare_paths, vertex_pairs)
from .pebbles import DEFAULT_STATE_CAP, GameState, validate_state
from .permgroups import PermGroup, transposition


class StructureWitnessNotFound(PebbleKitError):
    """No conforming bare-path witness exists.

    A connected graph with at least k+2 vertices that is not k-pebble-win
    always carries one, so seeing this means a bug, not a graph.
    """


# ---------------------------------------------------------------------------
# Direct route: harvest permutations from the labelled state space
# ---------------------------------------------------------------------------

def pebble_permutation_group(g: Graph, start: GameState,
                             cap: int = DEFAULT_STATE_CAP) -> PermGroup:
    """The group of label permutations achievable from ``start``.

    Runs the full reachability search; every visited state occupying the
    same vertex set as ``start`` is one achieved permutation.  Membership
    queries for arbitrary permutations go through the returned group's
    stabilizer chain.
    """
    s = validate_state(g, start)
    if not is_connected(g):
        raise ValidationError("graph must be connected")
    k = len(s)
    slot_of = {v: i for i, v in enumerate(s)}
    base_set = frozenset(s)
    group = PermGroup(k)
    adj = g.adjacency()
    visited = {s}
    queue = deque([s])
    while queue:
        cur = queue.popleft()
        occupied = set(cur)
        for i, v in enumerate(cur):
            for w in adj[v]:
                if w in occupied:
                    continue
                nxt = cur[:i] + (w,) + cur[i + 1:]
                if nxt in visited:
                    continue
                if len(visited) >= cap:
                    raise StateCapExceeded(
                        f"state search exceeded cap of {cap} states")
                visited.add(nxt)
                queue.append(nxt)
                if base_set == frozenset(nxt):
                    group.add(tuple(slot_of[x] for x in nxt))
    return group


# ---------------------------------------------------------------------------
# Configuration-space route (covering-graph loop transports)
# ---------------------------------------------------------------------------

def _adjacency_masks(g: Graph) -> tuple[int, ...]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return tuple(masks)


def _config_group(adj_masks: tuple[int, ...], n: int, k: int,
                  cap: int = DEFAULT_STATE_CAP) -> tuple[int, PermGroup]:
    """BFS the k-subset configuration graph, transporting one labelled
    representative along the tree; every non-tree edge closes a loop and
    yields one generator of the group at the base state (0, 1, ..., k-1).

    Returns (number of configurations reached, group).
    """
    if comb(n, k) > cap:
        raise StateCapExceeded(
            f"configuration space with {comb(n, k)} states exceeds cap {cap}")
    target_order = factorial(k)
    full = (1 << n) - 1
    start = (1 << k) - 1
    rep: dict[int, tuple[int, ...]] = {start: tuple(range(k))}
    parent: dict[int, int] = {start: 0}
    group = PermGroup(k)
    add_perm = group._add_perm
    done = target_order == 1
    queue = deque([start])
    pop = queue.popleft
    push = queue.append
    while queue:
        cfg = pop()
        pos = rep[cfg]
        free = full ^ cfg
        for slot in range(k):
            u = pos[slot]
            m = adj_masks[u] & free
            if not m:
                continue
            ubit = 1 << u
            while m:
                b = m & -m
                m ^= b
                ncfg = (cfg ^ ubit) | b
                if ncfg in rep:
                    if done or parent[cfg] == ncfg or cfg > ncfg:
                        continue
                    npos = pos[:slot] + (b.bit_length() - 1,) + pos[slot + 1:]
                    tgt = rep[ncfg]
                    loc = {vert: i for i, vert in enumerate(tgt)}
                    if add_perm(tuple(loc[x] for x in npos)):
                        if group.order_lower_bound() >= target_order:
                            done = True
                else:
                    rep[ncfg] = pos[:slot] + (b.bit_length() - 1,) + pos[slot + 1:]
                    parent[ncfg] = cfg
                    push(ncfg)
    return len(rep), group


def pebble_group_fast(g: Graph, k: int) -> tuple[bool, PermGroup]:
    """(connected configuration space, group at the base state) for k pebbles."""
    if not (1 <= k <= g.n):
        raise ValidationError(f"need 1 <= k <= {g.n}, got k={k}")
    n_cfg, group = _config_group(_adjacency_masks(g), g.n, k)
    return n_cfg == comb(g.n, k), group


def is_k_pebble_win(g: Graph, k: int) -> bool:
    """True iff every k-pebble game state is achievable from every other.

    Decided on one state: the graph is k-pebble-win exactly when the
    configuration space is connected and the group there is all of S_k.
    """
    if not is_connected(g):
        raise ValidationError("graph must be connected")
    cfg_connected, group = pebble_group_fast(g, k)
    return cfg_connected and group.order() == factorial(k)


# ---------------------------------------------------------------------------
# Red/blue colouring and the structure witness
# ---------------------------------------------------------------------------

def _transposition_components(group: PermGroup, k: int) -> list[list[int]]:
    """Components of the graph on pebble indices whose edges are the
    transpositions lying in the group."""
    adj: list[list[int]] = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if transposition(k, i, j) in group:
                adj[i].append(j)
                adj[j].append(i)
    seen: set[int] = set()
    comps: list[list[int]] = []
    for s in range(k):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _rb_from_group(group: PermGroup, k: int) -> dict[int, str]:
    comps = _transposition_components(group, k)
    if len(comps) == 1:
        raise ValidationError(
            f"graph is {k}-pebble-win; no red/blue colouring exists")
    red = set(comps[0]) if 0 in comps[0] else set(next(c for c in comps if 0 in c))
    return {i: ("r" if i in red else "b") for i in range(k)}


def rb_colouring(g: Graph, start: GameState,
                 cap: int = DEFAULT_STATE_CAP) -> dict[int, str]:
    """Two-colour the pebbles of ``start`` so that no red/blue pair can be
    swapped.

    The red class is the component of pebble 0 in the transposition graph;
    both classes are non-empty, and for every red i and blue j the
    transposition (i j) is not in the pebble-permutation group.  Errors
    out when the graph is k-pebble-win for k = len(start).
    """
    group = pebble_permutation_group(g, start, cap=cap)
    return _rb_from_group(group, len(start))


@dataclass(frozen=True)
class BarePathWitness:
    vertices: tuple[int, ...]
    edge_is_bridge: tuple[bool, ...]
    cycle: bool


@dataclass
class StructureReport:
    pebble_win: bool
    witness: BarePathWitness | None
    colouring: dict[int, str] | None

    def to_json_dict(self) -> dict:
        out: dict = {"pebble_win": self.pebble_win}
        if self.witness is None:
            out["witness"] = None
        else:
            out["witness"] = {
                "vertices": list(self.witness.vertices),
                "edge_is_bridge": list(self.witness.edge_is_bridge),
                "cycle": self.witness.cycle,
            }
        out["colouring"] = (None if self.colouring is None
                            else {str(i): c for i, c in sorted(self.colouring.items())})
        return out


def _find_witness(g: Graph, k: int) -> BarePathWitness | None:
    """First maximal bare path (lexicographic) covering all but at most k
    vertices whose edges are all bridges, unless the graph is a cycle."""
    cyc = is_cycle_graph(g)
    bridge_set = bridges(g)
    for seq in maximal_bare_paths(g):
        if g.n - len(seq) > k:
            continue
        flags = tuple((min(a, b), max(a, b)) in bridge_set
                      for a, b in zip(seq, seq[1:]))
        if all(flags) or cyc:
            return BarePathWitness(seq, flags, cyc)
    return None


def structure_witness(g: Graph, k: int) -> StructureReport:
    """Decide k-pebble-win and, for losing graphs, produce the structural
    witness: a maximal bare path missing at most k vertices whose edges
    are all bridges (or the whole graph is a cycle), plus a red/blue
    colouring of the base state (0, ..., k-1).
    """
    if not is_connected(g):
        raise ValidationError("graph must be connected")
    if g.n < k + 2:
        raise ValidationError(f"need at least k+2 = {k + 2} vertices, got {g.n}")
    cfg_connected, group = pebble_group_fast(g, k)
    if cfg_connected and group.order() == factorial(k):
        return StructureReport(pebble_win=True, witness=None, colouring=None)
    witness = _find_witness(g, k)
    if witness is None:
        raise StructureWitnessNotFound(
            f"no conforming bare path for k={k} in {g!r}")
    colouring = _rb_from_group(group, k) if cfg_connected else None
    if colouring is None:
        # Disconnected configuration space cannot happen on a connected
        # graph, but stay honest if it ever did.
        raise PebbleKitError("configuration space disconnected on a connected graph")
    return StructureReport(pebble_win=False, witness=witness, colouring=colouring)


# ---------------------------------------------------------------------------
# Exhaustive sweep
# ---------------------------------------------------------------------------

SWEEP_MAX_N = 7


def _masks_adjacency(n: int, mask: int, pairs: list[tuple[int, int]]) -> tuple[int, ...]:
    adj = [0] * n
    m = mask
    while m:
        b = m & -m
        m ^= b
        u, v = pairs[b.bit_length() - 1]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return tuple(adj)


def _mask_connected(n: int, adj: tuple[int, ...]) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            nxt |= adj[b.bit_length() - 1]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def _sweep_chunk(args) -> tuple[int, int, list[dict]]:
    """Sweep one mask range for one n.  Returns (checked, non_win, failures).

    k runs downward from n-2; a k-pebble-win graph is also j-pebble-win
    for every j < k (drop the extra pebbles and project the moves), so the
    scan stops at the first win.  The shortcut is property-tested against
    the per-instance decision in the suite.
    """
    n, lo, hi, monotone_shortcut = args
    pairs = vertex_pairs(n)
    checked = 0
    non_win = 0
    failures: list[dict] = []
    for mask in range(lo, hi):
        adj = _masks_adjacency(n, mask, pairs)
        if not _mask_connected(n, adj):
            continue
        g: Graph | None = None
        for k in range(n - 2, 0, -1):
            n_cfg, group = _config_group(adj, n, k)
            win = n_cfg == comb(n, k) and group.order() == factorial(k)
            if win and monotone_shortcut:
                checked += k
                break
            checked += 1
            if win:
                continue
            non_win += 1
            if g is None:
                g = graph_from_mask(n, mask)
            if _find_witness(g, k) is None:
                failures.append({
                    "n": n,
                    "k": k,
                    "edges": [list(e) for e in g.sorted_edges()],
                    "reason": "no conforming bare-path witness",
                })
    return checked, non_win, failures


def verify_structure_theorem(n_max: int, workers: int | None = None,
                             monotone_shortcut: bool = True) -> dict:
    """Sweep every connected labelled graph with n <= n_max and every
    1 <= k <= n-2; assert that each non-k-pebble-win instance has a
    conforming bare-path witness.

    Returns {"checked", "non_pebble_win", "failures", "elapsed_ms",
    "failures_detail"}.  ``workers`` distributes (graph, k) instances
    across processes; results are aggregated order-independently.
    """
    if not (1 <= n_max <= SWEEP_MAX_N):
        raise ValidationError(f"n_max must be between 1 and {SWEEP_MAX_N}")
    if workers is None:
        workers = os.cpu_count() or 1 if n_max >= 6 else 1
    t0 = time.perf_counter()
    jobs = []
    for n in range(1, n_max + 1):
        total = 1 << len(vertex_pairs(n))
        step = max(1, min(total, 1 << 16))
        for lo in range(0, total, step):
            jobs.append((n, lo, min(total, lo + step), monotone_shortcut))
    if workers > 1 and len(jobs) > 1:
        import multiprocessing as mp
        with mp.get_context("fork").Pool(workers) as pool:
            results = pool.map(_sweep_chunk, jobs)
    else:
        results = [_sweep_chunk(job) for job in jobs]
    checked = sum(r[0] for r in results)
    non_win = sum(r[1] for r in results)
    failures: list[dict] = []
    for r in results:
        failures.extend(r[2])
    elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return {
        "n_max": n_max,
        "checked": checked,
        "non_pebble_win": non_win,
        "failures": len(failures),
        "elapsed_ms": elapsed_ms,
        "failures_detail": failures,
    }
