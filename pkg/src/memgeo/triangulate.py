"""Constant-workspace triangulation of a plane straight-line graph.

Adding the convex hull and joining the two vertices of every trapezoid of the
vertical decomposition cuts the hull into mountains. No mountain is stored:
each scene or hull edge is asked, for each of its two sides, whether it is the
base of a mountain, and if so the mountain's chain is re-enumerated on demand
by walking the trapezoids above it.

A side is described by a frame sign ``sg``: +1 looks above the edge, -1 turns
the plane by 180 degrees so that "below" becomes "above".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from memgeo.mountain import triangulate_mountain
from memgeo.scene import (POLYGON, Constant, DegenerateInput, InvariantViolation, Scene,
                          count, counting, current_meter, metered, words)
from memgeo.sweeps import NONE, PlanarView, lex_lt

ABOVE = 1
BELOW = -1


@dataclass(frozen=True)
class BaseCandidate:
    """An edge ``(a, b)`` of the scene or its hull, looked at from one side."""

    a: int
    b: int
    side: int = ABOVE


@dataclass
class TriangulationSummary:
    triangles: int
    sweeps: int
    mountains: int
    scans: int


# --------------------------------------------------------------------------- hull


def hull_edges(view: PlanarView) -> Iterator[tuple[int, int]]:
    """Counterclockwise convex hull edges by Jarvis march, one scan per edge.

    Raises:
        DegenerateInput: if the vertices are all collinear.
    """
    if isinstance(view, Scene):
        view = PlanarView.of_scene(view)
    with words(3):
        start = view.lex_first()
        b = view.hull_next(start)
        if b == NONE or view.hull_next(b) == start:
            raise DegenerateInput("all vertices are collinear")
        c = start
        while True:
            d = view.hull_next(c)
            yield c, d
            c = d
            if c == start:
                return


# --------------------------------------------------------------------------- bases and chains


def _oriented(view: PlanarView, a: int, b: int, sg: int) -> tuple[int, int]:
    """The edge's endpoints, left one first in frame ``sg``."""
    s = view.scene
    return (a, b) if lex_lt(s.point(a), s.point(b), sg) else (b, a)


def _top_right(view: PlanarView, c: int, l: int, r: int, sg: int) -> tuple[int, int]:
    """Top edge of the cell just right of ``c``'s wall, above base ``l r``."""
    ref = r if c == l else NONE
    x = view.extreme_edge(c, True, ref, sg)
    if x != NONE:
        return c, x
    return view.ray_up(c, sg)


def _top_left(view: PlanarView, c: int, l: int, r: int, sg: int) -> tuple[int, int]:
    """Top edge of the cell just left of ``c``'s wall, above base ``l r``."""
    ref = l if c == r else NONE
    x = view.extreme_edge(c, False, ref, sg)
    if x != NONE:
        return x, c
    return view.ray_up(c, sg)


def chain_next(view: PlanarView, c: int, l: int, r: int, sg: int) -> int:
    """Next chain vertex right of ``c`` over base ``l r`` (frame ``sg``)."""
    return view.sweep_right(c, (l, r), _top_right(view, c, l, r, sg), sg)


def chain_prev(view: PlanarView, c: int, l: int, r: int, sg: int) -> int:
    """Previous chain vertex left of ``c`` over base ``l r`` (frame ``sg``)."""
    return view.sweep_left(c, (l, r), _top_left(view, c, l, r, sg), sg)


def is_mountain_base(view: PlanarView, cand: BaseCandidate) -> bool:
    """True iff more than one trapezoid rests on the given side of the edge."""
    l, r = _oriented(view, cand.a, cand.b, cand.side)
    with words(6):
        w = chain_next(view, l, l, r, cand.side)
        return w != r


@dataclass(frozen=True)
class WalkMountain:
    """A mountain whose chain is recovered by trapezoid walks.

    Holds only the base and the frame; ``prev``/``next`` cost O(n) each.
    """

    scene: Scene
    sweep_view: PlanarView
    l: int
    r: int
    sg: int

    def first(self) -> int:
        return self.l

    def last(self) -> int:
        return self.r

    def prev(self, v: int) -> int:
        if v == self.l:
            return NONE
        return chain_prev(self.sweep_view, v, self.l, self.r, self.sg)

    def next(self, v: int) -> int:
        if v == self.r:
            return NONE
        return chain_next(self.sweep_view, v, self.l, self.r, self.sg)

    def chain(self) -> list[int]:
        """The whole chain, left to right (test helper; stores k words)."""
        out = [self.l]
        while out[-1] != self.r:
            w = self.next(out[-1])
            if w == NONE or len(out) > self.scene.n:
                raise InvariantViolation("chain walk did not reach the base's right end")
            out.append(w)
        return out


def mountain_chain(view: PlanarView, cand: BaseCandidate) -> WalkMountain:
    """The mountain resting on the candidate's side.

    Raises:
        InvariantViolation: if the side holds a single trapezoid (not a base).
    """
    if not is_mountain_base(view, cand):
        raise InvariantViolation(f"{(cand.a, cand.b)} is not a mountain base on side {cand.side}")
    l, r = _oriented(view, cand.a, cand.b, cand.side)
    return WalkMountain(view.scene, view, l, r, cand.side)


# --------------------------------------------------------------------------- driver


def candidates(view: PlanarView) -> Iterator[BaseCandidate]:
    """Every scene edge and every hull edge that is not a scene edge, both sides."""
    for a, b in view.edges():
        yield BaseCandidate(a, b, ABOVE)
        yield BaseCandidate(a, b, BELOW)
    for a, b in hull_edges(view):
        if b in view.neighbors(a):
            continue
        yield BaseCandidate(a, b, ABOVE)
        yield BaseCandidate(a, b, BELOW)


def triangulate_view(view: PlanarView, sink: Callable[[tuple], None]) -> int:
    """Triangulate the convex hull of a view; returns the number of mountains."""
    mountains = 0
    with words(8):
        for cand in candidates(view):
            if not is_mountain_base(view, cand):
                continue
            mountains += 1
            l, r = _oriented(view, cand.a, cand.b, cand.side)
            triangulate_mountain(WalkMountain(view.scene, view, l, r, cand.side), sink)
    return mountains


def triangulate_pslg(scene: Scene, sink: Callable[[tuple], None],
                     budget: Optional[Constant] = None) -> TriangulationSummary:
    """Stream a triangulation of the scene's convex hull to ``sink``.

    Polygon scenes are read as the graph of their boundary, so the output
    covers the hull, not just the interior.

    Args:
        scene: the input.
        sink: called once per triangle with a canonical id triple.
        budget: run under a fresh meter with this budget (e.g. ``Constant()``);
            by default the caller's meter, if any, is used.

    Raises:
        DegenerateInput: if all vertices are collinear.
    """
    view = PlanarView.of_scene(scene)
    tally = [0]

    def emit(t):
        tally[0] += 1
        sink(t)

    def body():
        return triangulate_view(view, emit)

    if budget is not None:
        with metered(budget) as m:
            mountains = body()
        c = m.counters
    elif current_meter() is not None:
        mountains = body()
        c = current_meter().counters
    else:
        with counting() as c:
            mountains = body()
    return TriangulationSummary(tally[0], c["sweeps"], mountains, c["scans"])


def triangulation(scene: Scene) -> set:
    """All triangles as a set (convenience wrapper; not constant space)."""
    out: set = set()

    def add(t):
        if t in out:
            raise InvariantViolation(f"triangle {t} emitted twice")
        out.add(t)

    triangulate_pslg(scene, add)
    return out
