"""Finite simple undirected graphs.

Vertices are the integers 0..n-1; display labels never affect semantics.
This module carries the substrate everything else leans on: parsing,
connectivity, bridges, maximal bare paths, vertex-disjoint path counting
(the Menger/flow oracle), and exhaustive enumeration of small connected
labelled graphs.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import GraphParseError, ValidationError

Edge = tuple[int, int]
BarePath = tuple[int, ...]

ENUMERATION_MAX_N = 8


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are stored as unordered pairs (u, v) with u < v.  No self-loops,
    no parallel edges; every endpoint must be < n.
    """

    n: int
    edges: frozenset[Edge]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"vertex count must be >= 0, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValidationError(f"edge ({u}, {v}) out of range for n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValidationError("labels must cover every vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: tuple[str, ...] | None = None) -> "Graph":
        return cls(n, frozenset(_norm_edge(u, v) for u, v in edges), labels)

    def adjacency(self) -> list[tuple[int, ...]]:
        """Sorted neighbour tuples, index per vertex."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [tuple(sorted(a)) for a in adj]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def to_json_dict(self) -> dict:
        out: dict = {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}
        if self.labels is not None:
            out["labels"] = {str(i): lab for i, lab in enumerate(self.labels)}
        return out

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def parse_graph(text: str, fmt: str = "edge-list") -> Graph:
    """Parse a graph from text.

    ``edge-list``: one "u v" pair per line, whitespace-separated, '#' starts
    a comment.  Vertex indices are assigned in order of first appearance.

    ``json``: an object with integer "n" and an array "edges" of 2-arrays,
    plus an optional "labels" object mapping vertex index to string.
    """
    if fmt == "edge-list":
        return _parse_edge_list(text)
    if fmt == "json":
        return _parse_json(text)
    raise ValidationError(f"unknown graph format {fmt!r}")


def _parse_edge_list(text: str) -> Graph:
    order: dict[str, int] = {}
    edges: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        a, b = tokens
        if a == b:
            raise GraphParseError(f"line {lineno}: self-loop on {a!r}")
        for tok in (a, b):
            if tok not in order:
                order[tok] = len(order)
        e = _norm_edge(order[a], order[b])
        if e in edges:
            raise GraphParseError(f"line {lineno}: duplicate edge {a} {b}")
        edges.add(e)
    labels = tuple(order)
    if all(lab == str(i) for i, lab in enumerate(labels)):
        return Graph(len(order), frozenset(edges))
    return Graph(len(order), frozenset(edges), labels)


def _parse_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphParseError("top level: expected an object")
    n = doc.get("n")
    if not isinstance(n, int) or n < 0:
        raise GraphParseError("field 'n': expected a non-negative integer")
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise GraphParseError("field 'edges': expected an array")
    edges: set[Edge] = set()
    for i, pair in enumerate(raw_edges):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, int) for x in pair)):
            raise GraphParseError(f"edges[{i}]: expected a pair of integers")
        u, v = pair
        if u == v:
            raise GraphParseError(f"edges[{i}]: self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"edges[{i}]: endpoint out of range for n={n}")
        e = _norm_edge(u, v)
        if e in edges:
            raise GraphParseError(f"edges[{i}]: duplicate edge {u} {v}")
        edges.add(e)
    labels = None
    if "labels" in doc:
        raw_labels = doc["labels"]
        if not isinstance(raw_labels, dict):
            raise GraphParseError("field 'labels': expected an object")
        out = [str(i) for i in range(n)]
        for key, val in raw_labels.items():
            try:
                idx = int(key)
            except ValueError:
                raise GraphParseError(f"labels key {key!r}: expected an integer index")
            if not (0 <= idx < n):
                raise GraphParseError(f"labels key {key!r}: out of range for n={n}")
            out[idx] = str(val)
        labels = tuple(out)
    return Graph(n, frozenset(edges), labels)


# ---------------------------------------------------------------------------
# Connectivity and bridges
# ---------------------------------------------------------------------------

def is_connected(g: Graph) -> bool:
    """True iff g has a single component (vacuously true for n=0)."""
    if g.n <= 1:
        return True
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def component_count(g: Graph) -> int:
    adj = g.adjacency()
    seen: set[int] = set()
    count = 0
    for s in range(g.n):
        if s in seen:
            continue
        count += 1
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def bridges(g: Graph) -> frozenset[Edge]:
    """Edges whose removal increases the number of components.

    Iterative lowpoint computation; linear in the size of the graph.
    """
    adj = g.adjacency()
    disc = [-1] * g.n
    low = [0] * g.n
    out: set[Edge] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        # stack entries: (vertex, parent, neighbour iterator)
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        parent_seen = [False] * g.n
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent and not parent_seen[u]:
                    parent_seen[u] = True  # skip the tree edge once; parallels absent
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(adj[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if not advanced:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        out.add(_norm_edge(parent, u))
    return frozenset(out)


def is_cycle_graph(g: Graph) -> bool:
    """True iff g is a single cycle (connected, every degree exactly 2)."""
    if g.n < 3 or len(g.edges) != g.n:
        return False
    return all(g.degree(v) == 2 for v in range(g.n)) and is_connected(g)


# ---------------------------------------------------------------------------
# Vertex-disjoint paths (Menger/flow oracle)
# ---------------------------------------------------------------------------

def max_disjoint_paths(g: Graph, a_set: Iterable[int], b_set: Iterable[int],
                       forbidden: Iterable[int] = ()) -> tuple[int, list[list[int]]]:
    """Maximum family of fully vertex-disjoint A-B paths in g - forbidden.

    Returns the count together with witnessing paths (as vertex lists,
    endpoints included).  Exact: vertex-splitting reduction to a
    unit-capacity max-flow, solved by BFS augmentation.
    """
    A = frozenset(a_set)
    B = frozenset(b_set)
    F = frozenset(forbidden)
    if (A & B) or (A & F) or (B & F):
        raise ValidationError("A, B and forbidden must be pairwise disjoint")
    for v in itertools.chain(A, B, F):
        if not (0 <= v < g.n):
            raise ValidationError(f"vertex {v} out of range")
    if not A or not B:
        return 0, []

    # Split each usable vertex v into v_in = 2v and v_out = 2v + 1 with a
    # unit arc between them; graph edges become out->in arcs both ways.
    src = 2 * g.n
    snk = 2 * g.n + 1
    cap: dict[tuple[int, int], int] = {}
    arcs: dict[int, list[int]] = {i: [] for i in range(2 * g.n + 2)}
    original: set[tuple[int, int]] = set()

    def add_arc(x: int, y: int):
        if (x, y) in original:
            return
        original.add((x, y))
        cap[(x, y)] = 1
        cap.setdefault((y, x), 0)
        arcs[x].append(y)
        if x not in arcs[y]:
            arcs[y].append(x)

    for v in range(g.n):
        if v not in F:
            add_arc(2 * v, 2 * v + 1)
    for u, v in g.sorted_edges():
        if u in F or v in F:
            continue
        add_arc(2 * u + 1, 2 * v)
        add_arc(2 * v + 1, 2 * u)
    for a in sorted(A):
        add_arc(src, 2 * a)
    for b in sorted(B):
        add_arc(2 * b + 1, snk)
    for x in arcs:
        arcs[x].sort()

    flow = 0
    while True:
        prev: dict[int, int] = {src: src}
        queue = deque([src])
        while queue and snk not in prev:
            x = queue.popleft()
            for y in arcs[x]:
                if y not in prev and cap.get((x, y), 0) > 0:
                    prev[y] = x
                    queue.append(y)
        if snk not in prev:
            break
        y = snk
        while y != src:
            x = prev[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1

    # An original unit arc carries flow iff its residual dropped to 0.
    carrying: dict[int, list[int]] = {}
    for (x, y) in original:
        if cap[(x, y)] == 0:
            carrying.setdefault(x, []).append(y)
    for lst in carrying.values():
        lst.sort()

    paths: list[list[int]] = []
    for first in carrying.pop(src, []):
        path: list[int] = []
        node = first
        while node != snk:
            if node % 2 == 0:
                path.append(node // 2)
            nxt = carrying[node].pop(0)
            node = nxt
        paths.append(path)
    assert len(paths) == flow
    return flow, paths


def min_vertex_separator_size(g: Graph, a_set: Iterable[int], b_set: Iterable[int],
                              forbidden: Iterable[int] = ()) -> int:
    """Smallest vertex set whose removal leaves no A-B path in g - forbidden.

    Brute force over subsets, ascending size; intended as an independent
    oracle on small graphs.
    """
    A = frozenset(a_set)
    B = frozenset(b_set)
    F = frozenset(forbidden)
    candidates = [v for v in range(g.n) if v not in F]

    def separated(removed: frozenset[int]) -> bool:
        blocked = F | removed
        adj = g.adjacency()
        seen = set(a for a in A if a not in blocked)
        stack = list(seen)
        while stack:
            u = stack.pop()
            if u in B:
                return False
            for w in adj[u]:
                if w not in seen and w not in blocked:
                    seen.add(w)
                    stack.append(w)
        return not (seen & B)

    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            if separated(frozenset(combo)):
                return size
    return len(candidates)


# ---------------------------------------------------------------------------
# Enumeration of connected labelled graphs
# ---------------------------------------------------------------------------

def _connected_mask(n: int, mask: int, pair_bits: list[tuple[int, int]]) -> bool:
    adj = [0] * n
    m = mask
    while m:
        b = m & -m
        m ^= b
        u, v = pair_bits[b.bit_length() - 1]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
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


def vertex_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = vertex_pairs(n)
    edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
    return Graph.from_edges(n, edges)


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Every connected labelled graph on n vertices, exactly once.

    Labelled means graphs are distinguished by their edge sets, not up to
    isomorphism.  Capped at n <= 8; the stream has 2^C(n,2) candidates.
    """
    if not (1 <= n <= ENUMERATION_MAX_N):
        raise ValidationError(f"n must be between 1 and {ENUMERATION_MAX_N}, got {n}")
    pairs = vertex_pairs(n)
    pair_bits = list(pairs)
    for mask in range(1 << len(pairs)):
        if _connected_mask(n, mask, pair_bits):
            yield graph_from_mask(n, mask)


# ---------------------------------------------------------------------------
# Bare paths
# ---------------------------------------------------------------------------

def is_bare_path(g: Graph, seq: BarePath) -> bool:
    """Check the bare-path invariants: a path whose interior vertices all
    have degree exactly 2 in the host graph."""
    if len(seq) != len(set(seq)):
        return False
    if not all(0 <= v < g.n for v in seq):
        return False
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            return False
    return all(g.degree(v) == 2 for v in seq[1:-1])


def maximal_bare_paths(g: Graph) -> list[BarePath]:
    """All maximal bare paths of g, lexicographically sorted.

    A bare path is maximal when neither endpoint can be extended: the
    endpoint has degree != 2, or its remaining neighbour already lies on
    the path (which happens exactly when the graph is a cycle).
    """
    if g.n == 1:
        return [(0,)]
    adj = g.adjacency()
    deg = [len(a) for a in adj]
    found: set[BarePath] = set()
    for u, v in g.sorted_edges():
        path = deque((u, v))
        members = {u, v}
        # grow at the front
        while deg[path[0]] == 2:
            a, b = adj[path[0]]
            nxt = a if b == path[1] else b
            if nxt in members:
                break
            path.appendleft(nxt)
            members.add(nxt)
        # grow at the back
        while deg[path[-1]] == 2:
            a, b = adj[path[-1]]
            nxt = a if b == path[-2] else b
            if nxt in members:
                break
            path.append(nxt)
            members.add(nxt)
        seq = tuple(path)
        rev = seq[::-1]
        found.add(min(seq, rev))
    return sorted(found)


def find_bare_path_cover(g: Graph, k: int) -> BarePath | None:
    """A maximal bare path covering all but at most k vertices, if any.

    Ties among qualifying paths break to the lexicographically smallest
    vertex sequence.  Any bare path extends to a maximal one, so searching
    maximal paths only preserves existence.
    """
    if not is_connected(g):
        raise ValidationError("graph must be connected")
    best = None
    for seq in maximal_bare_paths(g):
        if g.n - len(seq) <= k:
            if best is None or seq < best:
                best = seq
    return best
