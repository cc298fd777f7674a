import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from memgeo.generators import MT5, random_mountain
from memgeo.mountain import (ArrayMountain, Phase, Step, check_mountain, classify_step,
                             initial_state, mountain_triangles, next_tour_step,
                             triangulate_mountain)
from memgeo.oracle import stack_monotone_triangulate
from memgeo.scene import InvariantViolation, counting


def as_sets(tris):
    return {frozenset(t) for t in tris}


def test_mt5_triangles():
    # [DERIVED] stack triangulation of the five-vertex mountain
    assert as_sets(mountain_triangles(MT5)) == {
        frozenset(t) for t in [(0, 1, 2), (0, 2, 4), (2, 3, 4)]}


def test_mt5_tour_sequence():
    # [DERIVED] step kinds of the tour over the five-vertex mountain
    view = ArrayMountain.from_points(MT5)
    state, tri = next_tour_step(view, initial_state(view), first=True)
    assert set(tri) == {0, 2, 4} and (state.u, state.v) == (0, 2)
    kinds = []
    while state.phase is Phase.RUNNING:
        kinds.append(classify_step(state))
        state, _ = next_tour_step(view, state)
    assert kinds == [Step.FORWARD, Step.BACKWARD, Step.SIDEWAYS, Step.BACKWARD]


def test_triangle_mountain_is_one_step():
    out = []
    assert triangulate_mountain(ArrayMountain.from_points([(0, 0), (1, 3), (4, 0)]),
                                out.append) == 1
    assert len(out) == 1


@pytest.mark.parametrize("pts", [
    [(0, 0), (1, 1)],
    [(0, 0), (3, 2), (2, 3), (5, 0)],     # not monotone
    [(0, 0), (2, -1), (4, 0)],            # below the base
])
def test_check_mountain_rejects(pts):
    with pytest.raises(InvariantViolation):
        check_mountain(pts)


@given(st.integers(3, 60), st.integers(0, 10 ** 6))
def test_matches_stack_oracle(k, seed):
    pts = random_mountain(k, random.Random(seed))
    with counting() as c:
        got = mountain_triangles(pts)
    assert as_sets(got) == as_sets(stack_monotone_triangulate(list(enumerate(pts))))
    assert len(got) == k - 2
    assert c["sweeps"] <= 2 * k + 4
