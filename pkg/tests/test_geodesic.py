from fractions import Fraction
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from memgeo.generators import (C5, L6, SQUARE, comb_polygon, interior_point, spiral_polygon,
                               star_polygon)
from memgeo.geodesic import (FINAL, ConeTriple, Decomposition, FunnelState, Lookahead, Outcome, Portal,
                             PortalRing, Subpolygon, WalkState, balanced_cut,
                             build_decomposition, catch_up, decomposition_from_chords,
                             geodesic_path, in_arc, locate, query, route_pieces,
                             standard_step, tree_route, whole)
from memgeo.oracle import chords_cross, visgraph_shortest_path
from memgeo.sweeps import NONE
from memgeo.scene import (DegenerateInput, GeometryError, InvariantViolation,
                          OutsidePolygon, build_scene)

G12 = [(int(1000 * math.cos(2 * math.pi * i / 12 + 0.1)),
        int(1000 * math.sin(2 * math.pi * i / 12 + 0.1))) for i in range(12)]
C12 = [(round(1000 * math.cos(2 * math.pi * i / 12)),
        round(1000 * math.sin(2 * math.pi * i / 12))) for i in range(12)]
TREE_CHORDS = [(0, 4), (4, 8), (8, 0), (0, 2), (2, 4), (4, 6)]


# --------------------------------------------------------------------------- pieces


def test_subpolygon_split():
    p = Subpolygon(((0, 3), (5, 7)), 10)
    assert p.size == 7 and list(p.vertices()) == [0, 1, 2, 3, 5, 6, 7]
    a, b = p.split(1, 6)
    assert a.runs == ((1, 3), (5, 6)) and b.runs == ((6, 7), (0, 1))
    assert a.size + b.size == p.size + 2
    assert p.connectors() == [(3, 5), (7, 0)]
    assert whole(10).connectors() == []
    with pytest.raises(InvariantViolation):
        p.split(1, 4)


def test_balanced_cut_examples():
    # [DERIVED] the minimax split of the rotated 12-gon and of the square
    cut = balanced_cut(build_scene(G12), whole(12))
    assert (cut.u, cut.v, cut.size_uv, cut.size_vu) == (3, 9, 7, 7)
    cut = balanced_cut(build_scene(SQUARE), whole(4))
    assert {cut.u, cut.v} == {1, 3}
    cut = balanced_cut(build_scene(C5[::-1]), whole(5))
    assert cut.larger == 4
    with pytest.raises(DegenerateInput):
        balanced_cut(build_scene(SQUARE[:3]), whole(3))


def test_decomposition_examples():
    sc = build_scene(G12)
    d = build_decomposition(sc, 3)
    # [DERIVED] t = ceil(12 / 3) = 4
    assert d.t == 4
    assert [p.size for p in d.pieces] == [3, 4, 4, 4, 3, 4]
    assert [(c.u, c.v) for c in d.chords] == [(10, 1), (10, 2), (9, 3), (8, 4), (7, 5)]
    assert [p.size for p in build_decomposition(sc, 12).pieces] == [3] * 10
    assert len(build_decomposition(sc, 1).pieces) == 1


def test_decomposition_errors():
    sc = build_scene(G12)
    for s in (0, 13):
        with pytest.raises(GeometryError):
            build_decomposition(sc, s)


def test_serialization_round_trip():
    sc = build_scene(star_polygon(40, random.Random(3)))
    d = build_decomposition(sc, 5)
    e = Decomposition.loads(sc, d.dumps())
    assert (e.s, e.t, e.pieces, e.chords) == (d.s, d.t, d.pieces, d.chords)
    assert e.adj_start == d.adj_start and e.adj_chord == d.adj_chord
    with pytest.raises(GeometryError):
        Decomposition.loads(sc, "1 2\n")


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("s", [1, 4, 7, 48])
def test_decomposition_invariants(seed, s):
    pts = star_polygon(48, random.Random(seed), spread=0.8)
    sc = build_scene(pts)
    d = build_decomposition(sc, s)
    for p in d.pieces:
        if d.t > 3:
            assert -(-d.t // 6) <= p.size <= d.t
        else:
            assert p.size == 3
    for cut in d.cuts:
        k = cut.size_uv + cut.size_vu - 2
        assert cut.larger <= 2 * k // 3 + 1
    keys = [(c.u, c.v) for c in d.chords]
    assert not any(chords_cross(sc, a, b) for i, a in enumerate(keys) for b in keys[i + 1:])
    assert d.storage_words <= 48 * s + 256
    # every piece pair is joined through the chord tree
    assert len(d.chords) == len(d.pieces) - 1


# --------------------------------------------------------------------------- locate and route


def test_locate_l6():
    d = decomposition_from_chords(build_scene(L6), [(0, 2)])
    assert [list(p.vertices()) for p in d.pieces] == [[0, 1, 2], [2, 3, 4, 5, 0]]
    assert locate(d, (9, 1)) == 0
    assert locate(d, (1, 9)) == 1 and locate(d, (1, 1)) == 1
    for bad in [(7, 7), (4, 7), (5, 0)]:
        with pytest.raises(OutsidePolygon):
            locate(d, bad)


def test_tree_route_fixture():
    # [DERIVED] seven pieces of the 12-gon fan; leaf (2,3,4) to leaf (8..0)
    d = decomposition_from_chords(build_scene(C12), TREE_CHORDS)
    assert [list(p.vertices()) for p in d.pieces] == [
        [0, 1, 2], [2, 3, 4], [4, 0, 2], [4, 5, 6], [6, 7, 8, 4], [8, 9, 10, 11, 0], [0, 4, 8]]
    route = tree_route(d, 1, 5)
    assert len(route) == 3
    assert route_pieces(d, 1, route) == [1, 2, 6, 5]
    assert tree_route(d, 4, 4) == []


# --------------------------------------------------------------------------- funnel pieces


def test_in_arc():
    assert in_arc((2, 0), (1, 0), (3, 0), 6)
    assert not in_arc((4, 0), (1, 0), (3, 0), 6)
    assert in_arc((0, 0), (5, 0), (1, 0), 6)          # wraps around
    assert not in_arc((1, 0), (1, 0), (3, 0), 6)      # open at the start
    assert in_arc((1, 1), (1, 0), (1, 2), 6)          # within one edge


def _state(apex, left, right):
    w = WalkState(None, 0, 0)
    return FunnelState(ConeTriple(apex, left, right), 1, 2, w, w, 3, w)


def test_standard_step_narrows():
    apex = ((0, 0), NONE)
    st_ = _state(apex, ((1, 4), 1), ((4, 1), 2))
    out, bend = standard_step(st_, Portal(((2, 3), 5), ((3, 2), 6), 1), (9, 9))
    assert (out, bend) == (Outcome.NEW_TRIPLE, None)
    assert st_.cone.r1 == ((2, 3), 5) and st_.cone.r2 == ((3, 2), 6)
    assert (st_.i1, st_.i2) == (3, 3)


def test_standard_step_emits_and_catches_up():
    apex = ((0, 0), NONE)
    st_ = _state(apex, ((1, 4), 1), ((4, 1), 2))
    # the new wall lies wholly beyond the left arm: bend at the left arm end
    out, bend = standard_step(st_, Portal(((-3, 5), 7), ((-1, 5), 8), 1), (9, 9))
    assert out == Outcome.EMITTED and bend == ((1, 4), 1)
    assert st_.cone == ConeTriple(bend, bend, bend)
    catch_up(st_)
    assert st_.cursor == st_.i1 == 1


def test_standard_step_final():
    apex = ((0, 0), NONE)
    st_ = _state(apex, ((1, 4), 1), ((4, 1), 2))
    assert standard_step(st_, FINAL, (2, 2)) == (Outcome.TERMINAL, None) and st_.done
    st_ = _state(apex, ((1, 4), 1), ((4, 1), 2))
    assert standard_step(st_, FINAL, (5, 0)) == (Outcome.EMITTED, ((4, 1), 2))


def test_lookahead_matches_a_replay():
    w = WalkState(None, 0, 0)
    root = ((1, 4), 1)
    walls = [Portal(((2, 6), 5), ((3, 3), 6), 1), Portal(((3, 5), 7), ((4, 4), 8), 1)]
    look = Lookahead.rooted(root, 3, w)
    replay = FunnelState(ConeTriple(root, root, root), 3, 3, w, w, 3, w)
    for i, wall in enumerate(walls, 4):
        look.feed(wall, i, w)
        replay.cursor = i
        assert standard_step(replay, wall, (9, 9))[0] == Outcome.NEW_TRIPLE
    assert look.cone == replay.cone and (look.i1, look.i2) == (replay.i1, replay.i2)
    main = _state(((0, 0), NONE), root, ((4, 1), 2))
    assert look.take_over(main) and main.cone == replay.cone


def test_lookahead_spoils_on_a_bend():
    w = WalkState(None, 0, 0)
    look = Lookahead.rooted(((0, 0), NONE), 0, w)
    look.feed(Portal(((1, 4), 1), ((4, 1), 2), 1), 1, w)
    look.feed(Portal(((-3, 5), 7), ((-1, 5), 8), 1), 2, w)
    assert look.spoiled and not look.take_over(_state(((0, 0), NONE), ((1, 4), 1), ((4, 1), 2)))


def test_portal_ring_window():
    ring = PortalRing(2)
    for i in range(1, 5):
        ring.push(i, i * 10)
    assert ring.get(2) is None and ring.get(3) == 30 and ring.get(4) == 40
    ring.push(2, 99)  # replay below the window is ignored
    assert ring.get(3) == 30


# --------------------------------------------------------------------------- queries


@pytest.mark.parametrize("s", [1, 2, 6])
def test_l6_query(s):
    # [PAPER] the L-shaped room: one bend at the reflex corner
    d = build_decomposition(build_scene(L6), s)
    r = query(d, (9, 1), (1, 9))
    assert r.path == [(9, 1), (4, 4), (1, 9)]
    assert r.vertices == 3
    assert r.length == pytest.approx(2 * math.sqrt(34), abs=1e-9)
    assert r.peak_words <= 48 * s + 256


def test_query_straight_and_same_point():
    d = build_decomposition(build_scene(L6), 2)
    assert geodesic_path(d, (1, 1), (3, 8)) == [(1, 1), (3, 8)]
    same = query(d, (1, 1), (1, 1))
    assert same.path == [(1, 1)] and same.length == 0.0
    # (1, 1) lies on a chord of this decomposition
    assert geodesic_path(d, (1, 1), (9, 1)) == [(1, 1), (9, 1)]
    with pytest.raises(OutsidePolygon):
        query(d, (1, 1), (8, 8))


def test_comb_query_matches_oracle():
    pts = comb_polygon(4)
    sc = build_scene(pts)
    p, q = interior_point(pts, 3), interior_point(pts, len(pts) - 3)
    want = visgraph_shortest_path(sc, p, q).points
    for s in (1, 3, 9):
        assert geodesic_path(build_decomposition(sc, s), p, q) == want


def test_wall_landing_on_vertex_with_same_abscissa():
    # vertices 14 and 100 share x = 5992, so the wall hanging from one ends
    # exactly on the other and the path bends there
    pts = spiral_polygon(58, seed=80)
    assert pts[14][0] == pts[100][0]
    sc = build_scene(pts)
    p = (Fraction(283427, 16), Fraction(-49297, 16))
    q = (Fraction(-2741, 2), Fraction(3687, 2))
    want = visgraph_shortest_path(sc, p, q).points
    assert pts[100] in want
    for s in (1, 51):
        assert geodesic_path(build_decomposition(sc, s), p, q) == want


@settings(max_examples=25)
@given(st.integers(8, 40), st.integers(0, 10 ** 6), st.data())
def test_query_matches_oracle(n, seed, data):
    rng = random.Random(seed)
    pts = star_polygon(n, rng, spread=0.9)
    sc = build_scene(pts)
    s = data.draw(st.integers(1, n))
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(0, n - 1))
    p, q = interior_point(pts, i), interior_point(pts, j)
    got = query(build_decomposition(sc, s), p, q)
    assert got.path == visgraph_shortest_path(sc, p, q).points
    assert got.ray_shots <= 2 * n + 8 * s + 16
