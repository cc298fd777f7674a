import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from memgeo.generators import C5, L6, SQUARE, random_pslg, star_polygon
from memgeo.oracle import check_triangulation
from memgeo.scene import (PSLG, Constant, DegenerateInput, InvariantViolation, build_scene,
                          metered)
from memgeo.sweeps import PlanarView
from memgeo.triangulate import (ABOVE, BELOW, BaseCandidate, candidates, hull_edges, is_mountain_base,
                                mountain_chain, triangulate_pslg, triangulation)


def test_square():
    tris = triangulation(build_scene(SQUARE))
    assert len(tris) == 2
    assert check_triangulation(build_scene(SQUARE), tris).ok


def test_l6_covers_hull():
    sc = build_scene(L6)
    tris = triangulation(sc)
    # [DERIVED] 6 vertices, 5 on the hull: 2n - h - 2 = 5
    assert len(tris) == 5
    assert check_triangulation(sc, tris).ok


def test_hull_edges_l6():
    view = PlanarView.of_scene(build_scene(L6))
    assert list(hull_edges(view)) == [(0, 1), (1, 2), (2, 4), (4, 5), (5, 0)]


def test_collinear_input_rejected():
    sc = build_scene([(0, 0), (1, 1), (2, 2)], [], kind=PSLG)
    with pytest.raises(DegenerateInput):
        triangulate_pslg(sc, lambda t: None)


def test_mountain_bases_on_l6():
    # [DERIVED] every base and chain of the L-shape's hull triangulation
    view = PlanarView.of_scene(build_scene(L6))
    got = {(c.a, c.b, c.side): mountain_chain(view, c).chain()
           for c in candidates(view) if is_mountain_base(view, c)}
    assert got == {(0, 1, ABOVE): [0, 5, 3, 1], (2, 3, ABOVE): [3, 4, 2],
                   (2, 3, BELOW): [2, 1, 3], (4, 5, BELOW): [4, 3, 5]}
    assert not is_mountain_base(view, BaseCandidate(2, 4, BELOW))
    with pytest.raises(InvariantViolation):
        mountain_chain(view, BaseCandidate(2, 4, BELOW))


def test_c5_reversed():
    sc = build_scene(C5[::-1])
    assert check_triangulation(sc, triangulation(sc)).ok


@pytest.mark.parametrize("seed", range(8))
def test_random_polygons(seed):
    sc = build_scene(star_polygon(40, random.Random(seed)))
    assert check_triangulation(sc, triangulation(sc)).ok


@given(st.integers(4, 40), st.integers(0, 10 ** 6))
def test_random_pslg_property(n, seed):
    sc = random_pslg(n, random.Random(seed))
    assert check_triangulation(sc, triangulation(sc)).ok


def test_isolated_points_only():
    sc = build_scene([(0, 0), (9, 1), (4, 7), (5, 3)], [], kind=PSLG)
    tris = triangulation(sc)
    assert len(tris) == 3 and check_triangulation(sc, tris).ok


def test_constant_workspace():
    peaks = []
    for n in (16, 64, 256):
        sc = build_scene(star_polygon(n, random.Random(n)))
        s = triangulate_pslg(sc, lambda t: None, budget=Constant())
        assert s.triangles == 2 * n - len(list(hull_edges(PlanarView.of_scene(sc)))) - 2
        with metered(Constant()) as m:
            triangulate_pslg(sc, lambda t: None)
        peaks.append(m.peak_words)
    assert len(set(peaks)) == 1 and peaks[0] <= 256
