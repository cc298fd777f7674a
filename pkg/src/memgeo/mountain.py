"""Triangulating a monotone mountain by a stateless Euler tour.

A mountain is a polygon ``a_1 .. a_k`` whose vertices increase in
(lexicographic) x, closed by the base ``a_1 a_k``. Here the chain lies above
the base; mountains hanging below a base are handled by the caller through a
180 degree frame rotation, which leaves every orientation test unchanged.

The tour walks the shortest path tree from ``a_1`` visiting children
counterclockwise. Instead of a stack it keeps the tour edge ``uv`` and the
boundary edge ``e = a_i a_{i+1}`` separating finished from unfinished
vertices; each step finds the next tree edge with one angular sweep.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Optional, Protocol, Sequence

from memgeo.scene import (PSLG, InvariantViolation, Point, Scene, build_scene,
                          canonical_triangle, count, cross, lex_less, words)
from memgeo.sweeps import NONE, PlanarView

TOUR_WORDS = 8  # u, v, a_{i-1}, a_i, a_{i+1}, phase, and two loop slots


class Step(enum.Enum):
    FORWARD = "forward"
    SIDEWAYS = "sideways"
    BACKWARD = "backward"


class Phase(enum.Enum):
    RUNNING = "running"
    DONE = "done"


class MountainView(Protocol):
    """Read access to a mountain's chain.

    ``prev`` and ``next`` may cost a full scan of the scene; the tour only
    needs ``prev`` (it finishes vertices right to left) plus the two base
    endpoints. ``sweep_view`` supplies the candidates for angular sweeps; it
    may hold more vertices than the mountain as long as none of them lies
    inside it.
    """

    scene: Scene
    sweep_view: PlanarView

    def first(self) -> int: ...

    def last(self) -> int: ...

    def prev(self, v: int) -> int: ...

    def next(self, v: int) -> int: ...


@dataclass(frozen=True)
class ArrayMountain:
    """Mountain whose chain is an explicit list of scene vertex ids."""

    scene: Scene
    ids: tuple
    sweep_view: PlanarView

    @classmethod
    def from_points(cls, points: Sequence[Point]) -> "ArrayMountain":
        """Build a standalone mountain; vertex ``i`` is ``a_{i+1}``.

        Raises:
            InvariantViolation: if the points do not form a mountain above its base.
        """
        k = len(points)
        check_mountain(points)
        edges = [(i, i + 1) for i in range(k - 1)] + [(0, k - 1)]
        scene = build_scene(points, edges, kind=PSLG)
        return cls(scene, tuple(range(k)), PlanarView.of_runs(scene, [[0, k - 1]]))

    @property
    def k(self) -> int:
        return len(self.ids)

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self.ids)}

    def _pos(self, v: int) -> int:
        return self._index[v]

    def first(self) -> int:
        return self.ids[0]

    def last(self) -> int:
        return self.ids[-1]

    def prev(self, v: int) -> int:
        i = self._pos(v)
        return self.ids[i - 1] if i > 0 else NONE

    def next(self, v: int) -> int:
        i = self._pos(v)
        return self.ids[i + 1] if i + 1 < len(self.ids) else NONE

    def chain(self) -> list[int]:
        return list(self.ids)


def check_mountain(points: Sequence[Point]) -> None:
    """Raise InvariantViolation unless ``points`` is a mountain above its base."""
    k = len(points)
    if k < 3:
        raise InvariantViolation("a mountain has at least three vertices")
    for i in range(k - 1):
        if not lex_less(points[i], points[i + 1]):
            raise InvariantViolation("chain is not monotone")
    for p in points[1:-1]:
        if cross(points[0], points[-1], p) <= 0:
            raise InvariantViolation("chain vertex on or below the base")


@dataclass(frozen=True)
class TourState:
    """Tour edge ``uv`` and boundary edge ``e = (ai, aj)`` with ``aj = a_{i+1}``.

    ``ap`` caches ``a_{i-1}`` (NONE when ``ai`` is ``a_1``) so the sideways and
    backward steps need no extra chain lookup.
    """

    u: int
    v: int
    ai: int
    aj: int
    ap: int
    phase: Phase = Phase.RUNNING


def initial_state(view: MountainView) -> TourState:
    """The exceptional start: ``uv = e = a_1 a_k`` followed by a sideways step."""
    a1, ak = view.first(), view.last()
    return TourState(a1, ak, ak, NONE, view.prev(ak))


def classify_step(state: TourState) -> Step:
    """Which of the three moves applies to a running state."""
    if state.v != state.ai and state.v != state.aj:
        return Step.FORWARD
    if state.u == state.ap:
        return Step.BACKWARD
    return Step.SIDEWAYS


def _side(view: MountainView, a: int, b: int, c: int) -> int:
    pt = view.scene.point
    d = cross(pt(a), pt(b), pt(c))
    return (d > 0) - (d < 0)


def next_tour_step(view: MountainView, state: TourState, first: bool = False
                   ) -> tuple[TourState, Optional[tuple[int, int, int]]]:
    """Perform one step of the tour.

    Args:
        view: the mountain.
        state: a running state.
        first: marks the initial sideways step from the base.

    Returns:
        The new state and the emitted triangle (canonical), or None.

    Raises:
        InvariantViolation: if a sweep finds nothing (the input is not a mountain).
    """
    sv = view.sweep_view
    u, v, ai, aj, ap = state.u, state.v, state.ai, state.aj, state.ap
    kind = Step.SIDEWAYS if first else classify_step(state)
    count("steps")
    if kind is Step.FORWARD:
        # rotate v->x about v, x sliding along e from the line uv towards a_i
        z = sv.fan(v, u, v, ai, 1, (ai, aj, _side(view, ai, aj, v)))
        if z == NONE:
            raise InvariantViolation(f"forward sweep at {v} found no vertex")
        tri = canonical_triangle(view.scene, v, z, aj)
        return replace(state, u=v, v=z), tri
    if kind is Step.SIDEWAYS:
        # rotate u->v about u, v sliding along e' = a_{i-1} a_i
        z = sv.fan(u, u, v, ap, 1, (ap, ai, _side(view, ap, ai, u)))
        if z == NONE:
            raise InvariantViolation(f"sideways sweep at {u} found no vertex")
        tri = canonical_triangle(view.scene, u, v, z)
        return TourState(u, z, ap, ai, view.prev(ap)), tri
    # backward
    a1 = view.first()
    if u == a1:
        return replace(state, phase=Phase.DONE), None
    ak = view.last()
    z = sv.fan(u, v, u, a1, -1, (a1, ak, _side(view, a1, ak, u)))
    if z == NONE:
        raise InvariantViolation(f"backward sweep at {u} found no vertex")
    return TourState(z, u, ap, ai, view.prev(ap)), None


def triangulate_mountain(view: MountainView, sink: Callable[[tuple], None]) -> int:
    """Emit the ``k - 2`` triangles of the mountain; returns the step count."""
    a1, ak = view.first(), view.last()
    with words(TOUR_WORDS):
        mid = view.prev(ak)
        if mid == NONE:
            raise InvariantViolation("a mountain has at least three vertices")
        if view.prev(mid) == a1:
            sink(canonical_triangle(view.scene, a1, mid, ak))
            return 1
        state = initial_state(view)
        state, tri = next_tour_step(view, state, first=True)
        sink(tri)
        steps = 1
        while state.phase is Phase.RUNNING:
            state, tri = next_tour_step(view, state)
            steps += 1
            if tri is not None:
                sink(tri)
    return steps


def mountain_triangles(points: Sequence[Point]) -> set:
    """Convenience wrapper: triangulate a point list, return index triples."""
    view = ArrayMountain.from_points(points)
    out: set = set()

    def add(t):
        if t in out:
            raise InvariantViolation(f"triangle {t} emitted twice")
        out.add(t)

    triangulate_mountain(view, add)
    return out
