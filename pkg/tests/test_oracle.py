import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from memgeo.generators import C5, L6, SQUARE, star_polygon
from memgeo.oracle import (check_triangulation, chords_cross, convex_hull, earclip,
                           point_in_polygon, segment_inside, stack_monotone_triangulate,
                           triangles_overlap, visgraph_shortest_path)
from memgeo.scene import OutsidePolygon, build_scene


def test_checker_accepts_and_rejects():
    sc = build_scene(SQUARE)
    good = [(0, 1, 2), (0, 2, 3)]
    assert check_triangulation(sc, good).ok
    assert not check_triangulation(sc, [(0, 1, 2)]).ok
    assert not check_triangulation(sc, [(0, 1, 2), (0, 1, 2)]).ok
    assert not check_triangulation(sc, [(0, 1, 3), (0, 2, 3)]).ok


def test_checker_polygon_region():
    sc = build_scene(L6)
    assert check_triangulation(sc, earclip(sc), region="polygon").ok
    assert not check_triangulation(sc, earclip(sc)).ok  # hull region misses the notch


@pytest.mark.parametrize("seed", range(5))
def test_earclip_valid(seed):
    sc = build_scene(star_polygon(30, random.Random(seed)))
    assert len(earclip(sc)) == sc.n - 2
    assert check_triangulation(sc, earclip(sc), region="polygon").ok


def test_convex_hull():
    assert sorted(convex_hull(L6)) == [0, 1, 2, 4, 5]
    assert len(convex_hull(C5)) == 5


def test_stack_oracle_on_convex_chain():
    chain = list(enumerate([(0, 0), (1, 2), (3, 3), (5, 2), (6, 0)]))
    assert len(stack_monotone_triangulate(chain)) == 3


def test_overlap():
    t = [(0, 0), (4, 0), (0, 4)]
    assert triangles_overlap(t, [(1, 1), (5, 1), (1, 5)])
    assert not triangles_overlap(t, [(4, 0), (4, 4), (0, 4)])


def test_point_in_polygon():
    assert point_in_polygon(L6, (2, 2)) == 1
    assert point_in_polygon(L6, (4, 7)) == 0
    assert point_in_polygon(L6, (7, 7)) == -1
    assert point_in_polygon(L6, (Fraction(1, 3), Fraction(1, 3))) == 1


def test_l6_visgraph():
    # [PAPER] L-shape example: the path wraps the reflex corner
    path = visgraph_shortest_path(build_scene(L6), (9, 1), (1, 9))
    assert path.points == [(9, 1), (4, 4), (1, 9)]
    assert path.length == pytest.approx(math.sqrt(34) * 2, abs=1e-9)


def test_visgraph_straight_and_outside():
    sc = build_scene(L6)
    assert visgraph_shortest_path(sc, (1, 1), (3, 8)).points == [(1, 1), (3, 8)]
    with pytest.raises(OutsidePolygon):
        visgraph_shortest_path(sc, (1, 1), (8, 8))


@given(st.integers(0, 3), st.integers(-20, 20), st.integers(-20, 20))
def test_visgraph_invariant_under_rotation_and_shift(rot, dx, dy):
    def move(p):
        x, y = p
        for _ in range(rot):
            x, y = -y, x
        return (x + dx, y + dy)

    sc = build_scene([move(p) for p in L6])
    path = visgraph_shortest_path(sc, move((9, 1)), move((1, 9)))
    assert path.points == [move((9, 1)), move((4, 4)), move((1, 9))]


def test_segment_and_chords():
    sc = build_scene(L6)
    assert segment_inside(sc, (0, 0), (4, 4))
    assert not segment_inside(sc, (10, 4), (4, 10))
    assert chords_cross(sc, (0, 4), (1, 5))
    assert not chords_cross(sc, (0, 3), (3, 5))
