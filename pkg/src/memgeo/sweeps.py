"""Constant-workspace sweeps: angular, translational, vertical ray shooting.

Two layers live here. The public operations accept arbitrary exact points
(integers or rationals) and run in pure Python. Algorithms that only ever
touch input vertices go through :class:`PlanarView`, whose methods call the
compiled scans in :mod:`memgeo._kernels`; tests check both layers agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from memgeo import _kernels as K
from memgeo.scene import (DERIVED_WORDS, POLYGON, Point, Scene, count, cross, dist2,
                          lex_less, words)

NONE = -1
UP = 1
DOWN = -1


# --------------------------------------------------------------------------- views


@dataclass(frozen=True)
class PlanarView:
    """A read-only planar straight-line graph drawn from a scene.

    Either the whole scene or a subpolygon given by cyclic vertex runs. The
    view owns no per-vertex storage: a subpolygon view is described by its
    runs alone.
    """

    scene: Scene
    runs: np.ndarray
    E: np.ndarray
    AP: np.ndarray
    AI: np.ndarray

    @classmethod
    def of_scene(cls, scene: Scene) -> "PlanarView":
        runs = np.array([[0, scene.n - 1]], dtype=np.int64)
        if scene.kind == POLYGON:
            empty = np.zeros((0, 2), dtype=np.int64)
            z = np.zeros(1, dtype=np.int64)
            return cls(scene, runs, empty, z, z)
        ap = np.zeros(scene.n + 1, dtype=np.int64)
        for v in range(scene.n):
            ap[v + 1] = ap[v] + len(scene.incidence[v])
        ai = np.array([scene.other(e, v) for v in range(scene.n) for e in scene.incidence[v]],
                      dtype=np.int64)
        if scene.m == 0:
            # no edges: runs must not be read as a boundary
            return _EdgelessView(scene, runs, np.zeros((0, 2), dtype=np.int64), ap,
                                 np.zeros(1, dtype=np.int64))
        return cls(scene, runs, scene.np_edges, ap, ai)

    @classmethod
    def of_runs(cls, scene: Scene, runs) -> "PlanarView":
        R = np.asarray(runs, dtype=np.int64).reshape(-1, 2)
        empty = np.zeros((0, 2), dtype=np.int64)
        z = np.zeros(1, dtype=np.int64)
        return cls(scene, R, empty, z, z)

    # python-side enumeration -------------------------------------------------

    @property
    def edgeless(self) -> bool:
        return False

    def vertex_ids(self) -> Iterator[int]:
        n = self.scene.n
        for a, b in self.runs:
            a, b = int(a), int(b)
            for t in range((b - a) % n + 1):
                yield (a + t) % n

    def edges(self) -> Iterator[tuple[int, int]]:
        if self.E.shape[0] > 0:
            for a, b in self.E:
                yield int(a), int(b)
            return
        if self.edgeless:
            return
        n = self.scene.n
        r = len(self.runs)
        for j in range(r):
            a, b = int(self.runs[j, 0]), int(self.runs[j, 1])
            for t in range((b - a) % n):
                yield (a + t) % n, (a + t + 1) % n
            yield b, int(self.runs[(j + 1) % r, 0])

    def point(self, v: int) -> Point:
        return self.scene.point(v)

    def size(self) -> int:
        n = self.scene.n
        return int(sum((int(b) - int(a)) % n + 1 for a, b in self.runs))

    def neighbors(self, v: int) -> list[int]:
        if self.E.shape[0] > 0 or self.edgeless:
            return [int(x) for x in self.AI[self.AP[v]:self.AP[v + 1]]]
        out = np.empty(2, dtype=np.int64)
        k = K._piece_nbrs(self.scene.n, self.runs, v, out)
        return [int(x) for x in out[:k]]

    # compiled scans -------------------------------------------------------------

    def ray_up(self, p: int, sg: int = 1) -> tuple[int, int]:
        """Edge (lex-ordered in frame ``sg``) above vertex ``p``, or (-1, -1)."""
        best = np.empty(2, dtype=np.int64)
        if self.edgeless:
            return NONE, NONE
        seen = K.ray_up(self.scene.np_xs, self.scene.np_ys, self.scene.n, self.runs, self.E,
                        sg, p, best)
        count("ray_shots")
        count("scans", int(seen))
        return int(best[0]), int(best[1])

    def extreme_edge(self, v: int, rightward: bool, ref: int = NONE, sg: int = 1) -> int:
        if self.edgeless:
            return NONE
        return int(K.extreme_edge(self.scene.np_xs, self.scene.np_ys, self.scene.n, self.runs,
                                  self.E, self.AP, self.AI, sg, v, rightward, ref))

    def sweep_right(self, v: int, bottom: tuple[int, int], top: tuple[int, int],
                    sg: int = 1) -> int:
        w, seen = K.sweep_right(self.scene.np_xs, self.scene.np_ys, self.scene.n, self.runs, sg,
                                v, bottom[0], bottom[1], top[0], top[1])
        count("scans", int(seen))
        return int(w)

    def sweep_left(self, v: int, bottom: tuple[int, int], top: tuple[int, int],
                   sg: int = 1) -> int:
        w, seen = K.sweep_left(self.scene.np_xs, self.scene.np_ys, self.scene.n, self.runs, sg,
                               v, bottom[0], bottom[1], top[0], top[1])
        count("scans", int(seen))
        return int(w)

    def fan(self, pivot: int, da: int, db: int, end: int, turn: int,
            half: tuple[int, int, int] = (NONE, NONE, 0)) -> int:
        w, seen = K.fan_sweep(self.scene.np_xs, self.scene.np_ys, self.scene.n, self.runs,
                              pivot, da, db, end, turn, half[0], half[1], half[2])
        count("sweeps")
        count("scans", int(seen))
        return int(w)

    def hull_next(self, c: int) -> int:
        w, seen = K.hull_next(self.scene.np_xs, self.scene.np_ys, self.scene.n, self.runs, c)
        count("scans", int(seen))
        return int(w)

    def lex_first(self, sg: int = 1) -> int:
        count("scans", self.size())
        return int(K.lex_extreme(self.scene.np_xs, self.scene.np_ys, self.scene.n, self.runs, sg))


class _EdgelessView(PlanarView):
    @property
    def edgeless(self) -> bool:
        return True


# --------------------------------------------------------------------------- exact python layer


def frame(p: Point, sg: int) -> Point:
    return p if sg == 1 else (-p[0], -p[1])


def lex_lt(p: Point, q: Point, sg: int = 1) -> bool:
    return lex_less(frame(p, sg), frame(q, sg))


def edge_below(a: Point, b: Point, c: Point, d: Point, sg: int = 1) -> bool:
    """True iff segment ab lies below segment cd on a wall both span.

    Endpoints are lex-ordered in frame ``sg``; segments do not cross.
    """
    if a == c:
        return cross(a, b, d) > 0
    if b == d:
        return cross(a, b, c) > 0
    if lex_lt(c, a, sg):
        return cross(c, d, a) < 0
    return cross(a, b, c) > 0


def _angle_cmp(d: Point, turn: int) -> Callable:
    """Comparator of direction vectors by rotation angle away from ``d``."""

    def half(v):
        c = turn * (d[0] * v[1] - d[1] * v[0])
        if c > 0:
            return 0
        if c == 0 and d[0] * v[0] + d[1] * v[1] > 0:
            return 0
        return 1

    def cmp(u, v):
        hu, hv = half(u), half(v)
        if hu != hv:
            return -1 if hu < hv else 1
        c = turn * (u[0] * v[1] - u[1] * v[0])
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return cmp


def angular_sweep(pivot: Point, from_dir: Point, to_dir: Point, turn: int,
                  candidates: Iterable[tuple[int, Point]],
                  region: Optional[Callable[[Point], bool]] = None,
                  inclusive_end: bool = False) -> Optional[tuple[int, int]]:
    """Rotate a ray about ``pivot`` and report the first candidate it meets.

    Args:
        pivot: centre of rotation.
        from_dir: start direction (vector).
        to_dir: stop direction (vector); candidates at or past it are ignored
            unless ``inclusive_end`` admits the stop direction itself.
        turn: +1 for counterclockwise, -1 for clockwise.
        candidates: ``(id, point)`` pairs, enumerated once.
        region: optional extra filter on candidate points.

    Returns:
        ``(id, k)`` for the first vertex hit, where ``k`` is the number of
        candidates inside the cone, or ``None`` if the cone is empty. Ties in
        angle go to the nearer candidate.
    """
    cmp = _angle_cmp(from_dir, turn)
    best = None
    best_pt = None
    inside = 0
    with words(3 + 2 * DERIVED_WORDS):
        for vid, pt in candidates:
            count("scans")
            v = (pt[0] - pivot[0], pt[1] - pivot[1])
            if v == (0, 0):
                continue
            if cmp(v, from_dir) == 0:
                continue  # on the start direction: not strictly past it
            c_end = cmp(v, to_dir)
            if c_end > 0 or (c_end == 0 and not inclusive_end):
                continue
            if region is not None and not region(pt):
                continue
            inside += 1
            if best is None:
                best, best_pt = vid, pt
                continue
            c = cmp(v, (best_pt[0] - pivot[0], best_pt[1] - pivot[1]))
            if c < 0 or (c == 0 and dist2(pivot, pt) < dist2(pivot, best_pt)):
                best, best_pt = vid, pt
    count("sweeps")
    if best is None:
        return None
    return best, inside


@dataclass(frozen=True)
class Ray:
    origin: Point
    direction: Point

    def __post_init__(self):
        if self.direction[0] == 0 and self.direction[1] == 0:
            raise ValueError("ray direction must be non-zero")

    def side(self, p: Point) -> int:
        o = self.origin
        d = self.direction
        c = d[0] * (p[1] - o[1]) - d[1] * (p[0] - o[0])
        return (c > 0) - (c < 0)


def translational_sweep(lower: Ray, upper: Ray, start: Point,
                        candidates: Iterable[tuple[int, Point]]) -> Optional[int]:
    """Sweep a segment spanning two rays rightwards from ``start``.

    The rays point rightwards with ``lower`` below ``upper``. Returns the id
    of the first candidate strictly between the rays and lexicographically
    after ``start``, or ``None``.
    """
    best = None
    best_pt = None
    with words(2 + DERIVED_WORDS):
        for vid, pt in candidates:
            count("scans")
            if not lex_less(start, pt):
                continue
            if lower.side(pt) <= 0 or upper.side(pt) >= 0:
                continue
            if best is None or lex_less(pt, best_pt):
                best, best_pt = vid, pt
    count("sweeps")
    return best


def shoot_point(view: PlanarView, p: Point, direction: int = UP,
                skip: Optional[int] = None) -> Optional[tuple[tuple[int, int], Point]]:
    """Vertical ray shooting from an arbitrary exact point.

    Args:
        view: the graph to shoot against.
        p: origin; may be rational.
        direction: :data:`UP` or :data:`DOWN`.
        skip: a vertex id whose incident edges are ignored (when ``p`` is that vertex).

    Returns:
        ``((a, b), hit)`` with the hit edge's endpoints (lex-ordered in the
        shooting frame) and the exact hit point, or ``None`` if the ray escapes.
    """
    sg = direction
    best = None
    with words(4 + DERIVED_WORDS):
        for a, b in view.edges():
            count("scans")
            if skip is not None and (a == skip or b == skip):
                continue
            pa, pb = view.point(a), view.point(b)
            if lex_lt(pb, pa, sg):
                a, b, pa, pb = b, a, pb, pa
            if not (lex_lt(pa, p, sg) and lex_lt(p, pb, sg)):
                continue
            if cross(pa, pb, p) >= 0:
                continue
            if best is None or edge_below(pa, pb, view.point(best[0]), view.point(best[1]), sg):
                best = (a, b)
    count("ray_shots")
    if best is None:
        return None
    return best, vertical_hit(view.point(best[0]), view.point(best[1]), p)


def vertical_hit(a: Point, b: Point, p: Point) -> Point:
    """Point of segment ab at the abscissa of ``p`` (exact)."""
    if a[0] == b[0]:
        return (p[0], a[1])
    if p[0] == a[0]:
        return (a[0], a[1])
    if p[0] == b[0]:
        return (b[0], b[1])
    t = Fraction(p[0] - a[0]) / (b[0] - a[0])
    y = a[1] + t * (b[1] - a[1])
    if isinstance(y, Fraction) and y.denominator == 1:
        y = y.numerator
    return (p[0], y)


def vertical_ray_shoot(view: PlanarView, p, direction: int = UP):
    """Vertical ray shooting from a vertex id or a point.

    Returns:
        ``((a, b), hit_point)`` or ``None`` when the ray escapes.
    """
    if isinstance(p, (int, np.integer)):
        v = int(p)
        a, b = view.ray_up(v, direction)
        if a == NONE:
            return None
        return (a, b), vertical_hit(view.point(a), view.point(b), view.point(v))
    return shoot_point(view, p, direction)


# --------------------------------------------------------------------------- trapezoids


@dataclass(frozen=True)
class Trapezoid:
    """A cell of the vertical decomposition.

    ``top`` and ``bottom`` are lex-ordered vertex pairs of the bounding edges
    (``None`` when the cell is unbounded on that side). ``left``/``right`` are
    the vertices whose walls bound the cell (``None`` for an unbounded end).
    """

    top: Optional[tuple[int, int]]
    bottom: Optional[tuple[int, int]]
    left: Optional[int]
    right: Optional[int]

    def key(self) -> tuple:
        return (self.top, self.bottom, self.left, self.right)


def _ordered(view: PlanarView, a: int, b: int) -> tuple[int, int]:
    return (a, b) if lex_less(view.point(a), view.point(b)) else (b, a)


def _sorted_fan(view: PlanarView, v: int, others: list[int], rightward: bool) -> list[int]:
    """Sort edge endpoints leaving ``v`` on one side from lowest to highest."""
    pv = view.point(v)

    def cmp(x, y):
        c = cross(pv, view.point(x), view.point(y))
        if rightward:
            return -1 if c > 0 else 1
        return -1 if c < 0 else 1

    return sorted(others, key=cmp_to_key(cmp))


def _interior(view: PlanarView, cell: Trapezoid) -> bool:
    """For polygon views: is the cell inside the (counterclockwise) boundary?"""
    if cell.top is not None:
        a, b = cell.top  # lex-ordered; interior lies below iff the boundary runs b -> a
        return _boundary_step(view, b) == a
    if cell.bottom is not None:
        a, b = cell.bottom
        return _boundary_step(view, a) == b
    return False


def _boundary_step(view: PlanarView, v: int) -> int:
    """Successor of ``v`` along the view's counterclockwise boundary."""
    nb = view.neighbors(v)
    return nb[1] if len(nb) == 2 else NONE


def trapezoids_at_vertex(view: PlanarView, v: int, interior_only: Optional[bool] = None
                         ) -> list[Trapezoid]:
    """All cells of the vertical decomposition with ``v`` on a wall.

    Cells are listed counterclockwise around ``v``: the right-hand cells from
    the lowest upwards, then the left-hand cells from the highest downwards.
    Polygon views report interior cells only unless ``interior_only`` is False.
    A drawing without edges has no walls, so its only cell is the plane.
    """
    if interior_only is None:
        interior_only = view.scene.kind == POLYGON or (view.E.shape[0] == 0 and not view.edgeless)
    if view.edgeless:
        return [Trapezoid(None, None, None, None)]
    nb = view.neighbors(v)
    pv = view.point(v)
    right = _sorted_fan(view, v, [x for x in nb if lex_less(pv, view.point(x))], True)
    left = _sorted_fan(view, v, [x for x in nb if lex_less(view.point(x), pv)], False)[::-1]
    up = view.ray_up(v, 1)
    dn = view.ray_up(v, -1)
    up_edge = None if up[0] == NONE else up
    dn_edge = None if dn[0] == NONE else (dn[1], dn[0])  # back to the unrotated lex order
    out: list[Trapezoid] = []
    with words(8):
        # right side, bottom to top
        bounds = [dn_edge] + [_ordered(view, v, x) for x in right] + [up_edge]
        for lo, hi in zip(bounds, bounds[1:]):
            w = view.sweep_right(v, lo or (NONE, NONE), hi or (NONE, NONE))
            out.append(Trapezoid(hi, lo, v, None if w == NONE else w))
        # left side, top to bottom
        bounds = [up_edge] + [_ordered(view, x, v) for x in left] + [dn_edge]
        for hi, lo in zip(bounds, bounds[1:]):
            w = view.sweep_left(v, lo or (NONE, NONE), hi or (NONE, NONE))
            out.append(Trapezoid(hi, lo, None if w == NONE else w, v))
    if interior_only:
        out = [c for c in out if _interior(view, c)]
    return out
