"""Linkage search and the independent walk checker."""

import pytest

from pebblekit.errors import LinkageCheckError, NoLinkageError, ValidationError
from pebblekit.linkage import Linkage, check_linkage, find_linkage, linkage_walks
from pebblekit.worlds import canonical_rays, chebyshev_ball, make_world, truncate


@pytest.fixture(scope="module")
def half_setup():
    hg = make_world("half-grid")
    return hg, truncate(hg, 8), canonical_rays(hg, 6)


def test_identity_linkage_is_pure_ride(half_setup):
    hg, t, cols = half_setup
    lk = find_linkage(t, cols[:2], cols[:2], set(), {0: 0, 1: 1})
    assert lk.sigma == {0: 0, 1: 1}
    assert lk.paths == {0: (), 1: ()}
    walks = check_linkage(t, cols[:2], cols[:2], lk)
    assert len(walks) == 2


def test_shift_linkage(half_setup):
    hg, t, cols = half_setup
    lk = find_linkage(t, cols[:3], cols[3:6], set(), {0: 0, 1: 1, 2: 2})
    check_linkage(t, cols[:3], cols[3:6], lk)
    assert lk.sigma == {0: 0, 1: 1, 2: 2}
    for p in lk.paths.values():
        assert p                      # families are disjoint: real connectors


def test_free_sigma_is_injective(half_setup):
    hg, t, cols = half_setup
    lk = find_linkage(t, cols[:3], cols[3:6], set())
    assert sorted(lk.sigma) == [0, 1, 2]
    assert len(set(lk.sigma.values())) == 3
    check_linkage(t, cols[:3], cols[3:6], lk)


def test_reversal_infeasible_at_every_depth(half_setup):
    hg, _, cols = half_setup
    for depth in (6, 9, 12):
        t = truncate(hg, depth)
        with pytest.raises(NoLinkageError) as err:
            find_linkage(t, cols[:3], cols[3:6], set(), {0: 2, 1: 1, 2: 0})
        assert err.value.depth == depth


def test_linkage_after_ball(half_setup):
    hg, t, cols = half_setup
    ball = set(chebyshev_ball(t, 3))
    lk = find_linkage(t, cols[:2], cols[2:4], ball, {0: 0, 1: 1})
    walks = check_linkage(t, cols[:2], cols[2:4], lk)
    # connectors and tails stay out of the ball
    for i, p in lk.paths.items():
        assert not (set(p[1:]) & ball)
    assert lk.after == frozenset(ball)


def test_full_grid_cyclic_shift():
    fg = make_world("full-grid")
    t = truncate(fg, 8)
    rays = canonical_rays(fg, 3)
    lk = find_linkage(t, rays, rays, set(chebyshev_ball(t, 2)),
                      {0: 1, 1: 2, 2: 0})
    check_linkage(t, rays, rays, lk)
    assert lk.sigma == {0: 1, 1: 2, 2: 0}


def test_validations(half_setup):
    hg, t, cols = half_setup
    with pytest.raises(ValidationError):
        find_linkage(t, cols[:3], cols[:2], set())     # |R| > |S|
    with pytest.raises(ValidationError):
        find_linkage(t, cols[:2], cols[:2], set(), {0: 0, 1: 0})
    with pytest.raises(ValidationError):
        find_linkage(t, cols[:2], cols[:2], set(), {0: 5, 1: 0})
    with pytest.raises(ValidationError):
        find_linkage(t, cols[:2], cols[:2], {-3}, {0: 0, 1: 1})


def test_checker_rejects_corrupted_linkages(half_setup):
    hg, t, cols = half_setup
    src, tgt = cols[:2], cols[2:4]
    lk = find_linkage(t, src, tgt, set(), {0: 0, 1: 1})
    # non-injective sigma
    bad = Linkage(sigma={0: 0, 1: 0}, paths=lk.paths, after=lk.after)
    with pytest.raises(LinkageCheckError):
        check_linkage(t, src, tgt, bad)
    # a connector that teleports
    p0 = list(lk.paths[0])
    broken = dict(lk.paths)
    broken[0] = tuple(p0[:1] + p0[2:]) if len(p0) > 2 else (p0[0], p0[0])
    bad2 = Linkage(sigma=lk.sigma, paths=broken, after=lk.after)
    with pytest.raises(LinkageCheckError):
        check_linkage(t, src, tgt, bad2)
    # claiming an empty connector across distinct rays
    bad3 = Linkage(sigma=lk.sigma, paths={0: (), 1: lk.paths[1]}, after=lk.after)
    with pytest.raises(LinkageCheckError):
        check_linkage(t, src, tgt, bad3)


def test_checker_rejects_overlapping_walks(half_setup):
    hg, t, cols = half_setup
    src = cols[:2]
    tgt = cols[2:4]
    lk = find_linkage(t, src, tgt, set(), {0: 0, 1: 1})
    # force both walks onto target ray 0
    bad = Linkage(sigma={0: 0, 1: 0}, paths=lk.paths, after=lk.after)
    with pytest.raises(LinkageCheckError):
        check_linkage(t, src, tgt, bad)


def test_checker_x_avoidance(half_setup):
    hg, t, cols = half_setup
    lk = find_linkage(t, cols[:2], cols[2:4], set(), {0: 0, 1: 1})
    # declare X on the connector path after the fact: must be rejected
    mid = lk.paths[0][1]
    bad = Linkage(sigma=lk.sigma, paths=lk.paths, after=frozenset({mid}))
    with pytest.raises(LinkageCheckError):
        check_linkage(t, cols[:2], cols[2:4], bad)


def test_linkage_json(half_setup):
    hg, t, cols = half_setup
    lk = find_linkage(t, cols[:2], cols[2:4], set(), {0: 0, 1: 1})
    doc = lk.to_json_dict(t)
    assert set(doc) == {"sigma", "paths", "after"}
    assert doc["sigma"] == {"0": 0, "1": 1}
    for path in doc["paths"].values():
        for c in path:
            assert isinstance(c, list) and len(c) == 2


def test_order_preservation_three_columns():
    # of all six bijections between columns {0,1,2} and {3,4,5}, only the
    # order-preserving one is realizable; checked exhaustively at two depths
    import itertools as it
    hg = make_world("half-grid")
    cols = canonical_rays(hg, 6)
    for depth in (6, 12):
        t = truncate(hg, depth)
        for perm in it.permutations(range(3)):
            sigma = {i: perm[i] for i in range(3)}
            monotone = perm == (0, 1, 2)
            if monotone:
                lk = find_linkage(t, cols[:3], cols[3:6], set(), sigma)
                check_linkage(t, cols[:3], cols[3:6], lk)
            else:
                with pytest.raises(NoLinkageError):
                    find_linkage(t, cols[:3], cols[3:6], set(), sigma)
