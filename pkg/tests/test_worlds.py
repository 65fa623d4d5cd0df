"""Infinite worlds, truncation windows, canonical ray families."""

import itertools

import pytest

from pebblekit.errors import ValidationError, WindowCapExceeded
from pebblekit.graphs import Graph, is_connected
from pebblekit.worlds import (RaySpec, World, canonical_rays, chebyshev_ball,
                              make_world, rayspec_from_json_dict, truncate,
                              world_from_json_dict, world_neighbors)

from conftest import complete_graph, cycle_graph, star_graph


def triangle():
    return cycle_graph(3)


def test_make_world_validation():
    with pytest.raises(ValidationError):
        make_world("mystery-grid")
    with pytest.raises(ValidationError):
        make_world("product-Z")                      # base missing
    with pytest.raises(ValidationError):
        make_world("product-N", base=Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(ValidationError):
        make_world("dominated-ray", k=0)
    assert make_world("dominated-ray", k=3).k == 3


def test_full_grid_window_counts():
    t = truncate(make_world("full-grid"), 2)
    assert t.graph.n == 25
    assert len(t.graph.edges) == 40
    interior = [v for v in range(t.graph.n) if v not in t.boundary]
    assert all(t.graph.degree(v) == 4 for v in interior)


def test_half_grid_window_counts():
    t = truncate(make_world("half-grid"), 2)
    assert t.graph.n == 15


def test_hex_interior_cubic():
    t = truncate(make_world("hex-half-grid"), 5)
    interior = [v for v in range(t.graph.n) if v not in t.boundary]
    degs = {t.graph.degree(v) for v in interior
            if t.coords[v][1] > 0}           # above the bottom row
    assert degs == {3}


def test_dominated_ray_comb_window():
    # spine strand plus k handle strands, a rung per level
    t = truncate(make_world("dominated-ray", k=2), 3)
    assert t.graph.n == 12
    spine = [t.index_of((0, lv)) for lv in range(4)]
    for lv in range(4):
        for strand in (1, 2):
            assert t.graph.has_edge(t.index_of((strand, lv)), spine[lv])
    assert t.graph.has_edge(spine[0], spine[1])
    assert not t.graph.has_edge(t.index_of((1, 0)), t.index_of((2, 0)))


def test_product_window():
    t = truncate(make_world("product-Z", base=triangle()), 2)
    assert t.graph.n == 15
    assert is_connected(t.graph)


def test_truncation_monotone():
    for w in (make_world("full-grid"), make_world("half-grid"),
              make_world("hex-half-grid"),
              make_world("product-N", base=star_graph(3)),
              make_world("dominated-ray", k=3)):
        small, big = truncate(w, 2), truncate(w, 3)
        for (u, v) in small.graph.sorted_edges():
            bu, bv = big.index_of(small.coords[u]), big.index_of(small.coords[v])
            assert big.graph.has_edge(bu, bv)
        # induced: no extra edges among the embedded vertices
        embed = {big.index_of(c) for c in small.coords}
        small_edge_count = len(small.graph.edges)
        big_induced = sum(1 for (u, v) in big.graph.sorted_edges()
                          if u in embed and v in embed)
        assert big_induced == small_edge_count


def test_boundary_marks_world_neighbours():
    t = truncate(make_world("half-grid"), 3)
    for v in range(t.graph.n):
        outside = [c for c in world_neighbors(t.world, t.coords[v])
                   if not t.contains(c)]
        assert (v in t.boundary) == bool(outside)


def test_window_cap():
    with pytest.raises(WindowCapExceeded):
        truncate(make_world("full-grid"), 50, cap=100)


def test_canonical_rays_disjoint_everywhere():
    worlds = [(make_world("half-grid"), 5), (make_world("full-grid"), 6),
              (make_world("hex-half-grid"), 3),
              (make_world("product-Z", base=triangle()), 3),
              (make_world("dominated-ray", k=3), 4)]
    for w, m in worlds:
        rays = canonical_rays(w, m)
        assert [r.index for r in rays] == list(range(m))
        sets = [r.vertex_set_in_window(12) for r in rays]
        for a, b in itertools.combinations(range(m), 2):
            assert not (sets[a] & sets[b]), (w.kind, a, b)


def test_canonical_supply_errors():
    with pytest.raises(ValidationError):
        canonical_rays(make_world("product-Z", base=triangle()), 4)
    with pytest.raises(ValidationError):
        canonical_rays(make_world("dominated-ray", k=2), 4)
    with pytest.raises(ValidationError):
        canonical_rays(make_world("half-grid"), 0)


def test_rayspec_validation():
    hg = make_world("half-grid")
    with pytest.raises(ValidationError):
        RaySpec(hg, ((0, 0),), ((0, -1),), 0)        # dives out of the world
    with pytest.raises(ValidationError):
        RaySpec(hg, ((0, 0), (5, 5)), ((0, 1),), 0)  # jump
    with pytest.raises(ValidationError):
        RaySpec(hg, ((0, 0),), ((0, 1), (0, -1)), 0)  # zero net displacement


def test_rayspec_coords_and_shift():
    fg = make_world("full-grid")
    r = RaySpec(fg, ((0, 1), (1, 1)), ((1, 0),), 0)
    assert [r.coord(i) for i in range(4)] == [(0, 1), (1, 1), (2, 1), (3, 1)]
    s = r.shifted(2)
    assert all(s.coord(i) == r.coord(i + 2) for i in range(12))


def test_ray_positions_contiguous():
    hg = make_world("half-grid")
    t = truncate(hg, 4)
    col = canonical_rays(hg, 3)[2]
    pos = col.positions_in(t)
    assert [t.coords[v] for v in pos] == [(2, y) for y in range(5)]


def test_world_and_ray_json_round_trip():
    import json
    w = make_world("product-N", base=star_graph(3))
    w2 = world_from_json_dict(json.loads(json.dumps(w.to_json_dict())))
    assert w2 == w
    hexw = make_world("hex-half-grid")
    r = canonical_rays(hexw, 2)[1]
    r2 = rayspec_from_json_dict(hexw, r.to_json_dict())
    assert all(r2.coord(i) == r.coord(i) for i in range(16))


def test_chebyshev_ball():
    t = truncate(make_world("full-grid"), 4)
    ball = chebyshev_ball(t, 1)
    assert {t.coords[v] for v in ball} == {(x, y) for x in (-1, 0, 1)
                                           for y in (-1, 0, 1)}
