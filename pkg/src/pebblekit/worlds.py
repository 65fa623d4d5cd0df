"""Finitely presented infinite graphs and their finite windows.

Supported worlds, all with pair coordinates:

* ``full-grid``    -- vertex set Z x Z, edges between coordinate neighbours.
* ``half-grid``    -- Z x N (x any integer, y >= 0).
* ``hex-half-grid``-- the cubic brick wall: the half grid with every second
  vertical rung removed (the rung at (x, y)-(x, y+1) survives iff x + y is
  even), so every interior vertex has degree 3.
* ``product-Z`` / ``product-N`` -- base graph times a double ray / ray;
  coordinates (base vertex, level).
* ``dominated-ray`` -- the k-fold dominated ray in its comb presentation:
  spine strand 0 carries the ray, strands 1..k are the dominating vertices
  expanded into handles, with a rung from every handle vertex down to the
  spine vertex on its level.  Coordinates (strand, level).  The expansion
  is what makes k+1 disjoint rays (spine plus one per handle) exist at
  all; with literal dominating vertices the world admits a single ray.

A truncation is the induced subgraph on all coordinates within ``depth``
under the world's window norm, with the boundary (vertices having a
world-neighbour outside the window) marked.  Windows are monotone: the
depth-d window is an induced subgraph of the depth-(d+1) window under
coordinate identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError, WindowCapExceeded
from .graphs import Graph, is_connected

Coord = tuple[int, int]

WORLD_KINDS = ("full-grid", "half-grid", "hex-half-grid",
               "product-Z", "product-N", "dominated-ray")

DEFAULT_WINDOW_CAP = 250_000


@dataclass(frozen=True)
class World:
    kind: str
    base: Graph | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind not in WORLD_KINDS:
            raise ValidationError(f"unknown world kind {self.kind!r}")
        if self.kind in ("product-Z", "product-N"):
            if self.base is None:
                raise ValidationError(f"{self.kind} requires a base graph")
            if self.base.n == 0 or not is_connected(self.base):
                raise ValidationError("product base must be non-empty and connected")
        if self.kind == "dominated-ray":
            if self.k is None or self.k < 1:
                raise ValidationError("dominated-ray requires k >= 1")

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.base is not None:
            out["base"] = self.base.to_json_dict()
        if self.k is not None:
            out["k"] = self.k
        return out


def make_world(kind: str, base: Graph | None = None, k: int | None = None) -> World:
    return World(kind, base, k)


def world_from_json_dict(doc: dict) -> World:
    from .graphs import parse_graph
    import json as _json
    kind = doc.get("kind")
    base = None
    if "base" in doc and doc["base"] is not None:
        base = parse_graph(_json.dumps(doc["base"]), "json")
    return World(kind, base, doc.get("k"))


# ---------------------------------------------------------------------------
# Coordinate rules
# ---------------------------------------------------------------------------

def world_contains(w: World, c: Coord) -> bool:
    x, y = c
    if w.kind == "full-grid":
        return True
    if w.kind in ("half-grid", "hex-half-grid"):
        return y >= 0
    if w.kind == "product-Z":
        return 0 <= x < w.base.n
    if w.kind == "product-N":
        return 0 <= x < w.base.n and y >= 0
    # dominated-ray comb: strand 0..k, level >= 0
    return 0 <= x <= w.k and y >= 0


def world_adjacent(w: World, a: Coord, b: Coord) -> bool:
    if a == b or not (world_contains(w, a) and world_contains(w, b)):
        return False
    ax, ay = a
    bx, by = b
    if w.kind in ("full-grid", "half-grid"):
        return abs(ax - bx) + abs(ay - by) == 1
    if w.kind == "hex-half-grid":
        if ay == by:
            return abs(ax - bx) == 1
        if ax == bx and abs(ay - by) == 1:
            return (ax + min(ay, by)) % 2 == 0
        return False
    if w.kind in ("product-Z", "product-N"):
        if ax == bx:
            return abs(ay - by) == 1
        return ay == by and w.base.has_edge(ax, bx)
    # dominated-ray comb
    if ax == bx:
        return abs(ay - by) == 1
    return ay == by and (ax == 0 or bx == 0)


def world_neighbors(w: World, c: Coord) -> list[Coord]:
    x, y = c
    if w.kind in ("full-grid", "half-grid"):
        cand = [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]
    elif w.kind == "hex-half-grid":
        cand = [(x - 1, y), (x + 1, y)]
        if (x + y) % 2 == 0:
            cand.append((x, y + 1))
        if y >= 1 and (x + y - 1) % 2 == 0:
            cand.append((x, y - 1))
    elif w.kind in ("product-Z", "product-N"):
        cand = [(x, y - 1), (x, y + 1)]
        cand.extend((b, y) for b in w.base.adjacency()[x])
    else:  # dominated-ray comb
        cand = [(x, y - 1), (x, y + 1)]
        if x == 0:
            cand.extend((j, y) for j in range(1, w.k + 1))
        else:
            cand.append((0, y))
    return sorted(c2 for c2 in cand if world_contains(w, c2))


def world_norm(w: World, c: Coord) -> int:
    """Window norm: Chebyshev for grids, level distance for layered worlds."""
    x, y = c
    if w.kind == "full-grid":
        return max(abs(x), abs(y))
    if w.kind in ("half-grid", "hex-half-grid"):
        return max(abs(x), y)
    return abs(y)


# ---------------------------------------------------------------------------
# Truncation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Truncation:
    world: World
    depth: int
    graph: Graph
    coords: tuple[Coord, ...]
    boundary: frozenset[int]

    def index_of(self, c: Coord) -> int | None:
        return self._index.get(c)

    @property
    def _index(self) -> dict[Coord, int]:
        d = self.__dict__.get("_index_cache")
        if d is None:
            d = {c: i for i, c in enumerate(self.coords)}
            object.__setattr__(self, "_index_cache", d)
        return d

    def contains(self, c: Coord) -> bool:
        return c in self._index


def _window_coords(w: World, depth: int) -> list[Coord]:
    if w.kind == "full-grid":
        return [(x, y) for x in range(-depth, depth + 1)
                for y in range(-depth, depth + 1)]
    if w.kind in ("half-grid", "hex-half-grid"):
        return [(x, y) for x in range(-depth, depth + 1)
                for y in range(0, depth + 1)]
    if w.kind == "product-Z":
        return [(v, t) for v in range(w.base.n)
                for t in range(-depth, depth + 1)]
    if w.kind == "product-N":
        return [(v, t) for v in range(w.base.n) for t in range(0, depth + 1)]
    return [(s, t) for s in range(w.k + 1) for t in range(0, depth + 1)]


def truncate(w: World, depth: int, cap: int = DEFAULT_WINDOW_CAP) -> Truncation:
    """Finite window of all coordinates within ``depth``."""
    if depth < 1:
        raise ValidationError(f"depth must be >= 1, got {depth}")
    coords = sorted(_window_coords(w, depth))
    if len(coords) > cap:
        raise WindowCapExceeded(
            f"window at depth {depth} has {len(coords)} vertices, cap {cap}")
    index = {c: i for i, c in enumerate(coords)}
    edges = []
    boundary = set()
    for i, c in enumerate(coords):
        for nb in world_neighbors(w, c):
            j = index.get(nb)
            if j is None:
                boundary.add(i)
            elif i < j:
                edges.append((i, j))
    g = Graph.from_edges(len(coords), edges)
    return Truncation(w, depth, g, tuple(coords), frozenset(boundary))


def chebyshev_ball(t: Truncation, radius: int) -> frozenset[int]:
    """Window vertex indices within ``radius`` of the origin in the world norm."""
    return frozenset(i for i, c in enumerate(t.coords)
                     if world_norm(t.world, c) <= radius)


# ---------------------------------------------------------------------------
# Rays
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RaySpec:
    """An eventually periodic one-way infinite path.

    ``prefix`` lists the first coordinates; afterwards the ``steps`` delta
    cycle repeats forever.  Two requirements keep finite-window analysis
    sound: the window norm never decreases along the ray (so the in-window
    part is always a contiguous initial segment) and the net displacement
    per cycle is nonzero (so the ray diverges).  Both are checked on a
    probe of the first few cycles.
    """

    world: World
    prefix: tuple[Coord, ...]
    steps: tuple[Coord, ...]
    index: int

    def __post_init__(self):
        if not self.prefix:
            raise ValidationError("ray prefix must contain at least one coordinate")
        if not self.steps:
            raise ValidationError("ray needs at least one periodic step")
        for c in self.prefix:
            if not world_contains(self.world, c):
                raise ValidationError(f"prefix coordinate {c} outside the world")
        net = (sum(dx for dx, _ in self.steps), sum(dy for _, dy in self.steps))
        if net == (0, 0):
            raise ValidationError("period cycle must have nonzero net displacement")
        probe = [self.coord(i) for i in range(len(self.prefix) + 4 * len(self.steps) + 1)]
        for a, b in zip(probe, probe[1:]):
            if not world_adjacent(self.world, a, b):
                raise ValidationError(f"ray coordinates {a} and {b} not adjacent")
        if len(set(probe)) != len(probe):
            raise ValidationError("ray coordinates must be injective")
        norms = [world_norm(self.world, c) for c in probe]
        for a, b in zip(norms, norms[1:]):
            if b < a:
                raise ValidationError("window norm must be non-decreasing along the ray")

    def coord(self, pos: int) -> Coord:
        if pos < 0:
            raise ValidationError("ray positions start at 0")
        if pos < len(self.prefix):
            return self.prefix[pos]
        x, y = self.prefix[-1]
        q, r = divmod(pos - len(self.prefix) + 1, len(self.steps))
        for dx, dy in self.steps:
            x += q * dx
            y += q * dy
        for dx, dy in self.steps[:r]:
            x += dx
            y += dy
        return (x, y)

    def coords_in_window(self, w_depth: int) -> list[Coord]:
        """Coordinates of the contiguous initial segment inside the window."""
        out = []
        pos = 0
        while True:
            c = self.coord(pos)
            if world_norm(self.world, c) > w_depth:
                break
            out.append(c)
            pos += 1
        return out

    def positions_in(self, t: Truncation) -> list[int]:
        """Window vertex indices of the in-window initial segment."""
        out = []
        for c in self.coords_in_window(t.depth):
            i = t.index_of(c)
            if i is None:
                raise ValidationError(f"ray coordinate {c} missing from window")
            out.append(i)
        return out

    def vertex_set_in_window(self, w_depth: int) -> frozenset[Coord]:
        return frozenset(self.coords_in_window(w_depth))

    def shifted(self, offset: int, new_index: int | None = None) -> "RaySpec":
        """The tail starting ``offset`` positions in, re-anchored so that the
        delta cycle still starts at phase zero."""
        if offset == 0 and new_index is None:
            return self
        cyc = len(self.steps)
        # the delta leaving position p (p >= len(prefix) - 1) is
        # steps[(p - len(prefix) + 1) % cyc]; anchor the new prefix so the
        # cycle restarts at phase zero
        end = max(len(self.prefix) - 1, offset)
        while (end - len(self.prefix) + 1) % cyc != 0:
            end += 1
        prefix = tuple(self.coord(p) for p in range(offset, end + 1))
        idx = self.index if new_index is None else new_index
        return RaySpec(self.world, prefix, self.steps, idx)

    def to_json_dict(self) -> dict:
        period: list = [list(s) for s in self.steps]
        if len(period) == 1:
            period = period[0]
        return {"prefix": [list(c) for c in self.prefix],
                "period": period, "index": self.index}


def rayspec_from_json_dict(w: World, doc: dict) -> RaySpec:
    prefix = tuple(tuple(c) for c in doc["prefix"])
    period = doc["period"]
    if period and isinstance(period[0], list):
        steps = tuple(tuple(s) for s in period)
    else:
        steps = (tuple(period),)
    return RaySpec(w, prefix, steps, int(doc.get("index", 0)))


def _full_grid_ray(w: World, i: int) -> RaySpec:
    """Four directions cycling with parallel offsets; the families live in
    four pairwise disjoint closed cones, so any m of them are disjoint."""
    direction, j = i % 4, i // 4
    if direction == 0:    # up, column x = -j
        return RaySpec(w, ((-j, 1),), ((0, 1),), i)
    if direction == 1:    # right, row y = j
        return RaySpec(w, ((1, j),), ((1, 0),), i)
    if direction == 2:    # down, column x = j + 1
        return RaySpec(w, ((j + 1, -1),), ((0, -1),), i)
    return RaySpec(w, ((-1, -j),), ((-1, 0),), i)  # left, row y = -j


def _hex_zigzag_ray(w: World, i: int) -> RaySpec:
    """Zigzag between columns 2i and 2i+1, one row per two steps.

    Starts at height 2i+1 so the window norm is the row throughout and the
    rung parities line up.
    """
    x = 2 * i
    prefix = ((x, 2 * i + 1),)
    steps = ((1, 0), (0, 1), (-1, 0), (0, 1))
    return RaySpec(w, prefix, steps, i)


def canonical_rays(w: World, m: int) -> list[RaySpec]:
    """m pairwise disjoint eventually periodic rays converging to one end.

    Per kind: vertical columns x = 0..m-1 in the half grid; the four
    directional families (with parallels) in the full grid; zigzag column
    pairs in the brick wall; one ray {v} x levels per base vertex in the
    products; the handle rays followed by the spine in the dominated ray.
    Raises when m exceeds the world's canonical supply.
    """
    if m < 1:
        raise ValidationError("m must be >= 1")
    if w.kind == "half-grid":
        return [RaySpec(w, ((i, 0),), ((0, 1),), i) for i in range(m)]
    if w.kind == "full-grid":
        return [_full_grid_ray(w, i) for i in range(m)]
    if w.kind == "hex-half-grid":
        return [_hex_zigzag_ray(w, i) for i in range(m)]
    if w.kind in ("product-Z", "product-N"):
        if m > w.base.n:
            raise ValidationError(
                f"product world supplies at most {w.base.n} canonical rays")
        return [RaySpec(w, ((v, 0),), ((0, 1),), v) for v in range(m)]
    # dominated-ray comb: handles first, spine last
    if m > w.k + 1:
        raise ValidationError(
            f"dominated-ray world supplies at most {w.k + 1} canonical rays")
    rays = [RaySpec(w, ((j + 1, 0),), ((0, 1),), j) for j in range(m - 1)]
    rays.append(RaySpec(w, ((0, 0),), ((0, 1),), m - 1))
    return rays
