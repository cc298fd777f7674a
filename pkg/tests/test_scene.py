import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from memgeo.generators import L6, SQUARE
from memgeo.scene import (PSLG, Constant, GeometryError, LinearInS, ParseError, Turn,
                          WorkspaceExceeded, build_scene, canonical_triangle, count, counting,
                          cross, lex_less, load_scene, meter_scope, metered, orient,
                          parse_poly_text, serialize, signed_area2, validate_general_position,
                          words)

coords = st.integers(-(1 << 20), 1 << 20)
points = st.tuples(coords, coords)


def test_orient_basic():
    assert orient((0, 0), (1, 0), (0, 1)) == Turn.CCW
    assert orient((0, 0), (1, 0), (0, -1)) == Turn.CW
    assert orient((0, 0), (1, 1), (2, 2)) == Turn.COLLINEAR


@given(points, points, points)
def test_orient_antisymmetric(a, b, c):
    assert orient(a, b, c) == -orient(b, a, c)
    assert orient(a, b, c) == orient(b, c, a)


@given(points, points)
def test_lex_is_strict_total(a, b):
    if a == b:
        assert not lex_less(a, b) and not lex_less(b, a)
    else:
        assert lex_less(a, b) != lex_less(b, a)


def test_parse_poly_text_roundtrip():
    text = serialize(build_scene(L6))
    assert parse_poly_text(text) == L6
    assert load_scene(text).points() == L6


@pytest.mark.parametrize("text", ["", "3\n0 0\n1 0\n", "x\n", "2 2\n0 0\n", "3\n0 0\n1 a\n2 2\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        load_scene(text)


def test_pslg_json():
    src = json.dumps({"vertices": [[0, 0], [4, 0], [2, 3]], "edges": [[0, 1]]})
    sc = load_scene(src, "pslg-json")
    assert sc.kind == PSLG and sc.m == 1
    with pytest.raises(ParseError):
        load_scene('{"vertices": [[0, 0]]}', "pslg-json")
    with pytest.raises(ParseError):
        load_scene('{"vertices": [[0, true]], "edges": []}', "pslg-json")


@pytest.mark.parametrize("pts", [
    SQUARE[::-1],                                   # clockwise
    [(0, 0), (4, 4), (4, 0), (0, 4)],               # bow tie
    [(0, 0), (1, 0), (0, 0), (0, 1)],               # duplicate vertex
    [(0, 0), (1 << 31, 0), (0, 1)],                 # out of range
])
def test_bad_polygons(pts):
    with pytest.raises(GeometryError):
        build_scene(pts)


def test_crossing_pslg_rejected():
    with pytest.raises(GeometryError):
        build_scene([(0, 0), (2, 2), (0, 2), (2, 0)], [(0, 1), (2, 3)], kind=PSLG)


def test_general_position_report():
    rep = validate_general_position(build_scene(L6))
    assert rep.ok and rep.duplicate_x_pairs == 3
    rep = validate_general_position(build_scene([(0, 0), (2, 0), (4, 0), (2, 3)]))
    assert not rep.ok and (0, 1, 2) in rep.collinear


@given(st.permutations([0, 1, 2]))
def test_canonical_triangle_invariant(perm):
    pts = [(0, 0), (5, 1), (2, 4)]
    assert canonical_triangle(pts, *perm) == (0, 1, 2)


def test_signed_area():
    assert signed_area2(SQUARE) == 200
    assert cross((0, 0), (1, 0), (1, 1)) == 1


def test_meter_tracks_peak_and_budget():
    def body():
        with words(10):
            with words(5):
                pass
        with words(7):
            pass
        return "done"

    out, peak = meter_scope(Constant(), body)
    assert (out, peak) == ("done", 15)
    with pytest.raises(WorkspaceExceeded):
        meter_scope(Constant(limit=12), body)
    assert LinearInS(4).limit == 48 * 4 + 256


def test_counters_without_meter():
    with counting() as c:
        count("scans", 3)
        count("scans")
    assert c["scans"] == 4
    with metered() as m:
        count("sweeps", 2)
    assert m.counters["sweeps"] == 2
