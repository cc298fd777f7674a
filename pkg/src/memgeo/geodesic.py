"""Shortest paths in a simple polygon with a memory budget of O(s) words.

Preprocessing cuts the polygon by non-crossing chords into O(s) subpolygons
of at most ``t = ceil(n / s)`` vertices each, found by repeated balanced
cuts; only the chords and the boundary runs of each piece are stored.

A query walks the pieces on the tree route from ``p`` to ``q``. Route chords
are see-through, every other chord is a wall, so the walk happens in the
simple polygon ``U`` formed by the route pieces. The geodesic is the taut
string through the sleeve of vertical-decomposition cells of ``U`` joining
the cells of ``p`` and ``q``; each cell is found by one wall-bounded sweep
that scans only the pieces the cell touches. The funnel over the cell walls
keeps O(1) points plus a ring of the most recent walls; when its apex jumps
back past the ring the walk is replayed from a stored checkpoint.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from memgeo.mountain import triangulate_mountain
from memgeo.scene import (DERIVED_WORDS, POLYGON, DegenerateInput, GeometryError,
                          InvariantViolation, LinearInS, OutsidePolygon, Point, Scene, count,
                          cross, lex_less, metered, release, reserve, segments_cross, words)
from memgeo.sweeps import DOWN, NONE, UP, PlanarView, edge_below, shoot_point, vertical_hit
from memgeo.triangulate import ABOVE, BELOW, BaseCandidate, WalkMountain, _oriented, is_mountain_base

CHORD_WORDS = 4  # u, v, left piece, right piece


# --------------------------------------------------------------------------- pieces


@dataclass(frozen=True)
class Chord:
    """A diagonal ``u v`` of the polygon.

    ``left`` is the piece that walks the chord from ``u`` to ``v`` along its
    counterclockwise boundary (so that piece lies left of ``u -> v``);
    ``right`` is the piece on the other side.
    """

    u: int
    v: int
    left: int = NONE
    right: int = NONE

    @property
    def key(self) -> tuple[int, int]:
        return (min(self.u, self.v), max(self.u, self.v))


@dataclass(frozen=True)
class Subpolygon:
    """A piece given by its counterclockwise boundary runs.

    Each run ``(a, b)`` covers polygon vertices ``a, a+1, .., b`` (mod n);
    the step from the end of one run to the start of the next is a chord,
    except for the one-run whole polygon, where it is the edge ``n-1 -> 0``.
    """

    runs: tuple[tuple[int, int], ...]
    n: int

    @property
    def words(self) -> int:
        return 2 * len(self.runs) + 1

    @property
    def size(self) -> int:
        return sum((b - a) % self.n + 1 for a, b in self.runs)

    def vertices(self) -> Iterator[int]:
        for a, b in self.runs:
            for t in range((b - a) % self.n + 1):
                yield (a + t) % self.n

    def position(self, v: int) -> int:
        """Index of ``v`` along the piece's boundary, or -1. O(runs) time."""
        off = 0
        for a, b in self.runs:
            d = (v - a) % self.n
            ln = (b - a) % self.n + 1
            if d < ln:
                return off + d
            off += ln
        return -1

    def at(self, pos: int) -> int:
        """Vertex at boundary index ``pos``."""
        for a, b in self.runs:
            ln = (b - a) % self.n + 1
            if pos < ln:
                return (a + pos) % self.n
            pos -= ln
        raise IndexError(pos)

    def connectors(self) -> list[tuple[int, int]]:
        """The chords on this piece's boundary, as counterclockwise pairs."""
        if len(self.runs) == 1 and (self.runs[0][1] + 1) % self.n == self.runs[0][0]:
            return []
        r = len(self.runs)
        return [(self.runs[j][1], self.runs[(j + 1) % r][0]) for j in range(r)]

    def has_edge(self, a: int, b: int) -> bool:
        """Whether ``a -> b`` is a counterclockwise boundary step of the piece."""
        k = self.size
        pa, pb = self.position(a), self.position(b)
        return pa >= 0 and pb >= 0 and (pb - pa) % k == 1

    def between(self, pa: int, pb: int) -> "Subpolygon":
        """The piece cut off from ``at(pa)`` counterclockwise to ``at(pb)``."""
        n = self.n
        out: list[list[int]] = []
        k = self.size
        length = (pb - pa) % k + 1
        pos = pa
        left = length
        while left > 0:
            # the run containing pos
            off = 0
            for a, b in self.runs:
                ln = (b - a) % n + 1
                if pos < off + ln:
                    break
                off += ln
            start = (a + pos - off) % n
            take = min(left, off + ln - pos)
            end = (start + take - 1) % n
            if out and (out[-1][1] + 1) % n == start:
                out[-1][1] = end
            else:
                out.append([start, end])
            left -= take
            pos = (pos + take) % k
        return Subpolygon(tuple((a, b) for a, b in out), n)

    def split(self, u: int, v: int) -> tuple["Subpolygon", "Subpolygon"]:
        """Both sides of the diagonal ``u v``; the first walks ``u .. v``."""
        pu, pv = self.position(u), self.position(v)
        if pu < 0 or pv < 0:
            raise InvariantViolation(f"chord {u}-{v} is not inside the piece")
        return self.between(pu, pv), self.between(pv, pu)


def whole(n: int) -> Subpolygon:
    return Subpolygon(((0, n - 1),), n)


def piece_view(scene: Scene, piece: Subpolygon) -> PlanarView:
    return PlanarView.of_runs(scene, piece.runs)


# --------------------------------------------------------------------------- balanced cut


@dataclass(frozen=True)
class Cut:
    """A chord with the sizes of the two pieces it would create."""

    u: int
    v: int
    size_uv: int
    size_vu: int

    @property
    def larger(self) -> int:
        return max(self.size_uv, self.size_vu)


def triangulate_piece(scene: Scene, piece: Subpolygon, sink: Callable[[tuple], None]) -> int:
    """Stream a triangulation of the piece's interior; returns the mountain count.

    Every boundary step ``a -> b`` is asked, on its interior side only,
    whether it carries a mountain; the mountains tile the piece.
    """
    view = piece_view(scene, piece)
    pt = scene.point
    mountains = 0
    with words(6):
        for a, b in view.edges():
            side = ABOVE if lex_less(pt(a), pt(b)) else BELOW
            cand = BaseCandidate(a, b, side)
            if not is_mountain_base(view, cand):
                continue
            mountains += 1
            l, r = _oriented(view, a, b, side)
            triangulate_mountain(WalkMountain(scene, view, l, r, side), sink)
    return mountains


def balanced_cut(scene: Scene, piece: Subpolygon) -> Cut:
    """The triangulation diagonal that splits the piece most evenly.

    Any triangulation has a diagonal leaving at most ``floor(2k/3) + 1``
    vertices on either side; the piece is triangulated in constant extra
    space and every diagonal is weighed as it streams by.

    Raises:
        DegenerateInput: if the piece has fewer than four vertices.
    """
    k = piece.size
    if k < 4:
        raise DegenerateInput("a balanced cut needs at least four vertices")
    best: list = [None]

    def weigh(tri):
        for x, y in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
            px, py = piece.position(x), piece.position(y)
            d = (py - px) % k
            if d in (1, k - 1):
                continue
            c = Cut(x, y, d + 1, k - d + 1)
            if best[0] is None or c.larger < best[0].larger:
                best[0] = c

    with words(6):
        triangulate_piece(scene, piece, weigh)
    if best[0] is None:
        raise InvariantViolation("triangulation of the piece has no diagonal")
    return best[0]


# --------------------------------------------------------------------------- decomposition


@dataclass
class Decomposition:
    """Non-crossing chords cutting a polygon into pieces of at most ``t`` vertices.

    The pieces and chords form a tree; ``adj`` is its adjacency in compressed
    form (``adj_start[i] .. adj_start[i+1]`` index into ``adj_chord``).
    """

    scene: Scene
    s: int
    t: int
    pieces: list[Subpolygon]
    chords: list[Chord]
    cuts: list[Cut] = field(default_factory=list, repr=False)

    def __post_init__(self):
        starts = [0] * (len(self.pieces) + 1)
        for c in self.chords:
            starts[c.left + 1] += 1
            starts[c.right + 1] += 1
        for i in range(len(self.pieces)):
            starts[i + 1] += starts[i]
        fill = list(starts[:-1])
        adj = [0] * (2 * len(self.chords))
        for ci, c in enumerate(self.chords):
            for pc in (c.left, c.right):
                adj[fill[pc]] = ci
                fill[pc] += 1
        self.adj_start = starts
        self.adj_chord = adj

    @property
    def n(self) -> int:
        return self.scene.n

    @property
    def storage_words(self) -> int:
        """Words held by the structure: header, chords, runs and tree."""
        return (3 + CHORD_WORDS * len(self.chords) + sum(p.words for p in self.pieces)
                + len(self.adj_start) + len(self.adj_chord))

    def piece_chords(self, i: int) -> list[int]:
        return self.adj_chord[self.adj_start[i]:self.adj_start[i + 1]]

    @cached_property
    def views(self) -> list[PlanarView]:
        return [piece_view(self.scene, p) for p in self.pieces]

    # serialization -------------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"{self.s} {self.t} {len(self.chords)}"]
        lines += [f"{c.u} {c.v} {c.left} {c.right}" for c in self.chords]
        lines += [" ".join(f"{a} {b}" for a, b in p.runs) for p in self.pieces]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, scene: Scene, text: str) -> "Decomposition":
        rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        try:
            s, t, m = (int(x) for x in rows[0])
            chords = [Chord(*(int(x) for x in r)) for r in rows[1:1 + m]]
            pieces = []
            for r in rows[1 + m:]:
                vals = [int(x) for x in r]
                pieces.append(Subpolygon(tuple(zip(vals[0::2], vals[1::2])), scene.n))
        except (ValueError, IndexError, TypeError) as exc:
            raise GeometryError(f"malformed decomposition: {exc}") from exc
        return cls(scene, s, t, pieces, chords)


def decomposition_from_chords(scene: Scene, chords: Sequence[tuple[int, int]], s: int = 1
                              ) -> Decomposition:
    """Cut the polygon along given non-crossing diagonals (fixtures and tests).

    Raises:
        InvariantViolation: if a chord does not split exactly one piece.
    """
    n = scene.n
    pieces = [whole(n)]
    for u, v in chords:
        for i, p in enumerate(pieces):
            pu, pv = p.position(u), p.position(v)
            if pu >= 0 and pv >= 0 and (pv - pu) % p.size not in (1, p.size - 1):
                pieces[i:i + 1] = list(p.split(u, v))
                break
        else:
            raise InvariantViolation(f"chord {u}-{v} splits no piece")
    return Decomposition(scene, s, -(-n // s), pieces, _link_chords(pieces))


def _link_chords(pieces: Sequence[Subpolygon]) -> list[Chord]:
    """Pair up the pieces on both sides of every connector."""
    found: dict = {}
    for i, p in enumerate(pieces):
        for a, b in p.connectors():
            found.setdefault((min(a, b), max(a, b)), []).append((i, a, b))
    chords = []
    for key in sorted(found):
        sides = found[key]
        if len(sides) != 2:
            raise InvariantViolation(f"chord {key} borders {len(sides)} pieces")
        (i, a, b), (j, _, _) = sides
        chords.append(Chord(a, b, i, j))
    return chords


def build_decomposition(scene: Scene, s: int) -> Decomposition:
    """Cut a simple polygon into pieces of at most ``ceil(n/s)`` vertices.

    Each round splits every oversized piece by its balanced cut, so piece
    sizes stay above a sixth of ``t``. With ``t <= 3`` the pieces are the
    triangles of a triangulation. Workspace is charged to the caller's meter
    (the CLI and tests use ``LinearInS(s)``).

    Raises:
        GeometryError: if the scene is not a polygon or ``s`` is out of range.
    """
    if scene.kind != POLYGON:
        raise GeometryError("decomposition needs a simple polygon")
    n = scene.n
    if not 1 <= s <= n:
        raise GeometryError(f"s must lie in 1..{n}")
    t = -(-n // s)
    held = reserve(3)
    cuts: list[Cut] = []
    try:
        if t <= 3:
            pieces = _triangle_pieces(scene)
        else:
            pieces = [whole(n)]
            held += reserve(pieces[0].words)
            while any(p.size > t for p in pieces):
                nxt = []
                for p in pieces:
                    if p.size <= t:
                        nxt.append(p)
                        continue
                    c = balanced_cut(scene, p)
                    cuts.append(c)
                    a, b = p.split(c.u, c.v)
                    held += reserve(a.words + b.words + CHORD_WORDS - p.words)
                    nxt += [a, b]
                pieces = nxt
        chords = _link_chords(pieces)
        d = Decomposition(scene, s, t, pieces, chords, cuts)
        held += reserve(len(d.adj_start) + len(d.adj_chord))
        return d
    finally:
        release(held)


def _triangle_pieces(scene: Scene) -> list[Subpolygon]:
    """The triangulation fallback: one three-vertex piece per triangle."""
    n = scene.n
    out: list[Subpolygon] = []
    held = [0]

    def add(tri):
        a, b, c = sorted(tri)
        runs = []
        for x, y in ((a, b), (b, c), (c, a)):
            if runs and (runs[-1][1] + 1) % n == x:
                runs[-1][1] = x
            else:
                runs.append([x, x])
        if len(runs) > 1 and (runs[-1][1] + 1) % n == runs[0][0]:
            runs[0][0] = runs[-1][0]
            runs.pop()
        p = Subpolygon(tuple((u, v) for u, v in runs), n)
        held[0] += reserve(p.words + CHORD_WORDS)
        out.append(p)

    try:
        triangulate_piece(scene, whole(n), add)
    finally:
        release(held[0])
    return out


# --------------------------------------------------------------------------- locate and route


def _shoot_chords(d: Decomposition, p: Point, chords: Sequence[int], sg: int = UP):
    """Lowest chord above ``p`` (frame ``sg``) among the given chord ids."""
    pt = d.scene.point
    best = None
    for ci in chords:
        c = d.chords[ci]
        a, b = _lex_pair(pt, c.u, c.v, sg)
        pa, pb = pt(a), pt(b)
        count("scans")
        if not (_llt(pa, p, sg) and _llt(p, pb, sg)) or cross(pa, pb, p) >= 0:
            continue
        if best is None or edge_below(pa, pb, pt(best[1][0]), pt(best[1][1]), sg):
            best = (ci, (a, b))
    return best


def _llt(p, q, sg):
    return lex_less(p, q) if sg > 0 else lex_less(q, p)


def _lex_pair(pt, a, b, sg=UP):
    return (a, b) if _llt(pt(a), pt(b), sg) else (b, a)


def _on_boundary(scene: Scene, p: Point) -> bool:
    """Whether ``p`` lies on a polygon edge (one scan, exact)."""
    n = scene.n
    for a in range(n):
        count("scans")
        pa, pb = scene.point(a), scene.point((a + 1) % n)
        if cross(pa, pb, p) == 0 and min(pa[0], pb[0]) <= p[0] <= max(pa[0], pb[0]) \
                and min(pa[1], pb[1]) <= p[1] <= max(pa[1], pb[1]):
            return True
    return False


def locate(d: Decomposition, p: Point) -> int:
    """Index of the piece containing ``p``.

    Shoots upward against the polygon and all chords. A chord hit names its
    piece directly; a boundary hit is matched against the pieces' runs.

    Raises:
        OutsidePolygon: if ``p`` is not strictly inside the polygon.
    """
    scene = d.scene
    n = scene.n
    with words(8 + 2 * DERIVED_WORDS):
        if _on_boundary(scene, p):
            raise OutsidePolygon(f"{p} lies on the boundary")
        hit = shoot_point(PlanarView.of_scene(scene), p, UP)
        if hit is None:
            raise OutsidePolygon(f"{p} is outside the polygon")
        (a, b), h = hit
        if h == p:
            raise OutsidePolygon(f"{p} lies on the boundary")
        # boundary runs counterclockwise; hitting a left-to-right edge from below means outside
        if (a + 1) % n == b:
            raise OutsidePolygon(f"{p} is outside the polygon")
        best = _shoot_chords(d, p, range(len(d.chords)))
        if best is not None:
            ci, (ca, cb) = best
            pt = scene.point
            if edge_below(pt(ca), pt(cb), pt(a), pt(b)):
                c = d.chords[ci]
                # interior of the piece left of u->v is above the chord iff u is its left end
                return c.right if lex_less(pt(c.u), pt(c.v)) else c.left
        for i, piece in enumerate(d.pieces):
            if piece.has_edge(b, a):
                return i
    raise InvariantViolation(f"no piece holds boundary edge {b}-{a}")


def tree_route(d: Decomposition, a: int, b: int, budget: bool = True) -> list[int]:
    """Chord ids on the tree path from piece ``a`` to piece ``b``, in order.

    Args:
        budget: charge the search's parent and queue arrays to the meter;
            the query passes False because it reserves a fixed-size table.
    """
    if a == b:
        return []
    m = len(d.pieces)
    with words(2 * m if budget else 0):
        parent = [-2] * m  # chord id used to reach the piece; -1 marks the root
        parent[a] = -1
        todo = deque([a])
        while todo:
            x = todo.popleft()
            if x == b:
                break
            for ci in d.piece_chords(x):
                c = d.chords[ci]
                y = c.right if c.left == x else c.left
                if parent[y] == -2:
                    parent[y] = ci
                    todo.append(y)
        route = []
        x = b
        while x != a:
            ci = parent[x]
            route.append(ci)
            c = d.chords[ci]
            x = c.right if c.left == x else c.left
    route.reverse()
    return route


def _other_piece(c: Chord, x: int) -> int:
    return c.right if c.left == x else c.left


def _chord_through(d: Decomposition, p: Point) -> int:
    """Id of the chord whose relative interior holds ``p``, or -1."""
    pt = d.scene.point
    for ci, c in enumerate(d.chords):
        count("scans")
        pa, pb = pt(c.u), pt(c.v)
        if cross(pa, pb, p) == 0 and lex_less(min(pa, pb), p) and lex_less(p, max(pa, pb)):
            return ci
    return -1


def route_pieces(d: Decomposition, a: int, route: Sequence[int]) -> list[int]:
    """The piece sequence visited by a route starting in piece ``a``."""
    out = [a]
    for ci in route:
        c = d.chords[ci]
        out.append(c.right if c.left == out[-1] else c.left)
    return out


# --------------------------------------------------------------------------- the route polygon U

ROUTE_WORDS = 3  # piece id, entrance chord, exit chord
CELL_WORDS = 9  # two edges with owners, two walls, arrival side
PORTAL_WORDS = 2 * DERIVED_WORDS + 3  # two endpoints, their vertex ids, direction
CACHE_SLOT_WORDS = 1 + PORTAL_WORDS + CELL_WORDS
FUNNEL_WORDS = 3 * (DERIVED_WORDS + 1) + 4 + 3 * CELL_WORDS + PORTAL_WORDS + DERIVED_WORDS + 8
LOOKAHEAD_WORDS = 3 * (DERIVED_WORDS + 1) + 2 + 2 * (CELL_WORDS + 2) + 1


def piece_capacity(s: int) -> int:
    """Upper bound on the piece count of any decomposition with parameter ``s``."""
    return 6 * s


@dataclass(frozen=True)
class UEdge:
    """A boundary edge of ``U``, lex-ordered, with the route index of its piece."""

    l: int
    r: int
    j: int


@dataclass(frozen=True)
class Cell:
    """A trapezoid of ``U``'s vertical decomposition.

    ``arrival`` tags the wall the walk came through (see
    :meth:`RouteRegion.exits`), or is ``(0, 0)`` for the first cell.
    """

    top: UEdge
    bot: UEdge
    lv: int
    rv: int
    arrival: tuple = (0, 0)


@dataclass(frozen=True)
class Portal:
    """A wall crossed by the walk; ``dirn`` is +1 going right, -1 going left.

    Endpoints are ``(point, vertex id or NONE)``.
    """

    upper: tuple
    lower: tuple
    dirn: int

    @property
    def left(self) -> tuple:
        return self.upper if self.dirn > 0 else self.lower

    @property
    def right(self) -> tuple:
        return self.lower if self.dirn > 0 else self.upper


def _param(a: Point, b: Point, h: Point) -> Fraction:
    if a[0] != b[0]:
        return Fraction(h[0] - a[0]) / (b[0] - a[0])
    return Fraction(h[1] - a[1]) / (b[1] - a[1])


def in_arc(k: tuple, a: tuple, b: tuple, n: int) -> bool:
    """Whether boundary key ``k`` lies strictly inside the counterclockwise arc a..b.

    A key ``(i, t)`` is the point at parameter ``t`` along the boundary edge
    that leaves vertex ``i``.
    """
    def rel(x):
        d = (x[0] - a[0]) % n
        if d == 0 and x[1] < a[1]:
            d = n
        return (d, x[1])

    return (0, a[1]) < rel(k) < rel(b)


class RouteRegion:
    """The union ``U`` of the route pieces, walked without materializing it.

    Args:
        d: the decomposition.
        route: chord ids from ``tree_route``.
        start: the piece of the path's source.
    """

    def __init__(self, d: Decomposition, route: Sequence[int], start: int):
        self.d = d
        self.scene = d.scene
        self.pieces = route_pieces(d, start, route)
        self.keys = [d.chords[ci].key for ci in route]
        self.views = [d.views[i] for i in self.pieces]

    def __len__(self) -> int:
        return len(self.pieces)

    def pt(self, v: int) -> Point:
        return self.scene.point(v)

    def across(self, j: int, a: int, b: int) -> int:
        """Route index on the other side of ``a b`` if it is a route chord of piece ``j``."""
        key = (min(a, b), max(a, b))
        if j > 0 and self.keys[j - 1] == key:
            return j - 1
        if j < len(self.keys) and self.keys[j] == key:
            return j + 1
        return -1

    def _nbrs(self, v: int, j: int) -> list[int]:
        return self.views[j].neighbors(v)

    def succ(self, v: int, j: int) -> tuple[int, int]:
        """Counterclockwise successor of ``v`` on ``U``'s boundary, with its edge's owner."""
        while True:
            w = self._nbrs(v, j)[1]
            k = self.across(j, v, w)
            if k < 0:
                return w, j
            j = k

    def pred(self, v: int, j: int) -> tuple[int, int]:
        while True:
            w = self._nbrs(v, j)[0]
            k = self.across(j, v, w)
            if k < 0:
                return w, j
            j = k

    def edge(self, a: int, b: int, j: int) -> UEdge:
        return UEdge(a, b, j) if lex_less(self.pt(a), self.pt(b)) else UEdge(b, a, j)

    # shooting -----------------------------------------------------------------

    def shoot(self, x: Point, j: int, direction: int) -> tuple[UEdge, Point]:
        """First ``U`` edge hit by a vertical ray from ``x`` (inside route piece ``j``)."""
        origin = x
        while True:
            k = self._exit_through(origin, j, direction)
            if k >= 0:
                j = k
                continue
            res = shoot_point(self.views[j], origin, direction)
            if res is None:
                raise InvariantViolation(f"vertical ray from {x} escaped route piece {j}")
            (a, b), h = res
            k = self.across(j, a, b)
            if k < 0:
                return self.edge(a, b, j), h
            origin, j = h, k

    def _exit_through(self, x: Point, j: int, direction: int) -> int:
        """Route index across a chord of piece ``j`` that ``x`` lies on, if the ray leaves ``j`` there."""
        piece = self.d.pieces[self.pieces[j]]
        for i in (j - 1, j):
            if not 0 <= i < len(self.keys):
                continue
            a, b = self.keys[i]
            if not piece.has_edge(a, b):
                a, b = b, a
            pa, pb = self.pt(a), self.pt(b)
            if pa[0] == pb[0] or cross(pa, pb, x) != 0:
                continue
            if not min(pa[0], pb[0]) < x[0] < max(pa[0], pb[0]):
                continue
            # the piece lies left of a -> b; a vertical ray leaves it on the right
            if (pb[0] - pa[0]) * direction < 0:
                return i + 1 if i == j else i
        return -1

    def key_top(self, e: UEdge, h: Point) -> tuple:
        """Boundary key of a point on an edge with ``U`` below it (walked right to left)."""
        return (e.r, _param(self.pt(e.r), self.pt(e.l), h))

    def key_bot(self, e: UEdge, h: Point) -> tuple:
        return (e.l, _param(self.pt(e.l), self.pt(e.r), h))

    # cells --------------------------------------------------------------------

    def _span(self, top: UEdge, bot: UEdge) -> range:
        return range(min(top.j, bot.j), max(top.j, bot.j) + 1)

    def close_right(self, top: UEdge, bot: UEdge, lv: int) -> tuple[int, int]:
        """Right wall vertex of the cell starting at ``lv`` and its route piece."""
        pt = self.pt
        best, jb = (top.r, top.j) if lex_less(pt(top.r), pt(bot.r)) else (bot.r, bot.j)
        with words(4):
            for j in self._span(top, bot):
                w = self.views[j].sweep_right(lv, (bot.l, bot.r), (top.l, top.r))
                if w != best and lex_less(pt(w), pt(best)):
                    best, jb = w, j
        count("ray_shots")
        return best, jb

    def close_left(self, top: UEdge, bot: UEdge, rv: int) -> tuple[int, int]:
        pt = self.pt
        best, jb = (top.l, top.j) if lex_less(pt(bot.l), pt(top.l)) else (bot.l, bot.j)
        with words(4):
            for j in self._span(top, bot):
                w = self.views[j].sweep_left(rv, (bot.l, bot.r), (top.l, top.r))
                if w != best and lex_less(pt(best), pt(w)):
                    best, jb = w, j
        count("ray_shots")
        return best, jb

    def _point_wall(self, x: Point, top: UEdge, bot: UEdge, rightward: bool
                    ) -> tuple[int, int]:
        """Nearest wall vertex right (or left) of an arbitrary point of the cell."""
        pt = self.pt
        if rightward:
            best, jb = (top.r, top.j) if lex_less(pt(top.r), pt(bot.r)) else (bot.r, bot.j)
        else:
            best, jb = (top.l, top.j) if lex_less(pt(bot.l), pt(top.l)) else (bot.l, bot.j)
        tl, tr, bl, br = pt(top.l), pt(top.r), pt(bot.l), pt(bot.r)
        with words(4 + DERIVED_WORDS):
            for j in self._span(top, bot):
                for w in self.d.pieces[self.pieces[j]].vertices():
                    count("scans")
                    pw = pt(w)
                    if rightward:
                        if not (lex_less(x, pw) and lex_less(pw, pt(best))):
                            continue
                    elif not (lex_less(pw, x) and lex_less(pt(best), pw)):
                        continue
                    if cross(bl, br, pw) > 0 and cross(tl, tr, pw) < 0:
                        best, jb = w, j
        count("ray_shots")
        return best, jb

    def cell_at(self, x: Point, j: int) -> tuple[Cell, int, int]:
        """The cell containing point ``x`` of route piece ``j``.

        Returns:
            The cell and the route pieces of its two wall vertices.
        """
        top, _ = self.shoot(x, j, UP)
        bot, _ = self.shoot(x, j, DOWN)
        lv, jl = self._point_wall(x, top, bot, False)
        rv, jr = self._point_wall(x, top, bot, True)
        return Cell(top, bot, lv, rv), jl, jr

    def contains(self, c: Cell, x: Point) -> bool:
        pt = self.pt
        return (lex_less(pt(c.lv), x) and lex_less(x, pt(c.rv))
                and cross(pt(c.bot.l), pt(c.bot.r), x) > 0
                and cross(pt(c.top.l), pt(c.top.r), x) < 0)

    # vertical shots from vertices --------------------------------------------

    def _toward(self, v: int, j: int, direction: int) -> bool:
        """Whether the vertical direction leaves ``v`` into route piece ``j``.

        Vertical means vertical in the lex-sheared plane, so the direction is
        ``(-eps, 1)`` upward and ``(eps, -1)`` downward.
        """
        pv = self.pt(v)
        pred, succ = self._nbrs(v, j)
        a = (self.pt(succ)[0] - pv[0], self.pt(succ)[1] - pv[1])
        b = (self.pt(pred)[0] - pv[0], self.pt(pred)[1] - pv[1])

        def d_cross(w):  # sign of cross(direction, w)
            s = -(w[0] if w[0] != 0 else w[1])
            return s if direction == UP else -s

        ab = a[0] * b[1] - a[1] * b[0]
        after_a = -d_cross(a) > 0   # cross(a, d) > 0
        before_b = d_cross(b) > 0   # cross(d, b) > 0
        return (after_a and before_b) if ab > 0 else (after_a or before_b)

    def shoot_vertex(self, v: int, j: int, direction: int) -> UEdge:
        """First ``U`` edge hit by the vertical ray leaving vertex ``v`` into ``U``.

        ``j`` is any route piece holding ``v``; the ray's own piece is found
        by turning around ``v`` across route chords.
        """
        with words(4):
            for step in (1, 0):
                k = j
                while True:
                    if self._toward(v, k, direction):
                        e, _ = self.shoot(self.pt(v), k, direction)
                        return e
                    w = self._nbrs(v, k)[step]
                    k = self.across(k, v, w)
                    if k < 0:
                        break
        raise InvariantViolation(f"no route piece at {v} faces the vertical ray")

    # walls ----------------------------------------------------------------------

    def exits(self, c: Cell, jl: int, jr: int) -> Iterator[tuple]:
        """Walls of the cell other than the one it was entered by.

        Yields ``(portal, arc, make_next)`` where ``arc`` is the boundary arc
        of ``U`` beyond the wall and ``make_next()`` builds the next walk state.
        Walls are tagged ``(side, slot)``: side -1/+1 for left/right, slot 0
        for a wall spanning the whole side, 1/2 for the upper/lower half of a
        side split by its wall vertex.
        """
        for tag, portal, arc, make in self._walls(c, jl, jr):
            if tag != c.arrival:
                yield portal, arc, make

    def _lex(self, a: int, b: int) -> bool:
        return lex_less(self.pt(a), self.pt(b))

    def _tag(self, e: UEdge, h: Point) -> int:
        """Vertex id when a wall lands exactly on an endpoint of ``e``."""
        if h == self.pt(e.l):
            return e.l
        return e.r if h == self.pt(e.r) else NONE

    def _walls(self, c: Cell, jl: int, jr: int) -> Iterator[tuple]:
        pt = self.pt
        top, bot = c.top, c.bot
        v, p = c.rv, pt(c.rv)
        if v == top.r and v == bot.r:
            pass
        elif v == top.r:
            h = vertical_hit(pt(bot.l), pt(bot.r), p)
            yield ((1, 0), Portal((p, v), (h, self._tag(bot, h)), 1), (self.key_bot(bot, h), (v, 0)),
                   lambda v=v: self._past_right(v, jr, bot, True))
        elif v == bot.r:
            h = vertical_hit(pt(top.l), pt(top.r), p)
            yield ((1, 0), Portal((h, self._tag(top, h)), (p, v), 1), ((v, 0), self.key_top(top, h)),
                   lambda v=v: self._past_right(v, jr, top, False))
        else:
            ht = vertical_hit(pt(top.l), pt(top.r), p)
            hb = vertical_hit(pt(bot.l), pt(bot.r), p)
            yield ((1, 1), Portal((ht, self._tag(top, ht)), (p, v), 1), ((v, 0), self.key_top(top, ht)),
                   lambda v=v: self._go_right(top, self.edge(v, *self.succ(v, jr)), v, jr, (-1, 0)))
            yield ((1, 2), Portal((p, v), (hb, self._tag(bot, hb)), 1), (self.key_bot(bot, hb), (v, 0)),
                   lambda v=v: self._go_right(self.edge(v, *self.pred(v, jr)), bot, v, jr, (-1, 0)))
        v, p = c.lv, pt(c.lv)
        if v == top.l and v == bot.l:
            pass
        elif v == top.l:
            h = vertical_hit(pt(bot.l), pt(bot.r), p)
            yield ((-1, 0), Portal((p, v), (h, self._tag(bot, h)), -1), ((v, 0), self.key_bot(bot, h)),
                   lambda v=v: self._past_left(v, jl, bot, True))
        elif v == bot.l:
            h = vertical_hit(pt(top.l), pt(top.r), p)
            yield ((-1, 0), Portal((h, self._tag(top, h)), (p, v), -1), (self.key_top(top, h), (v, 0)),
                   lambda v=v: self._past_left(v, jl, top, False))
        else:
            ht = vertical_hit(pt(top.l), pt(top.r), p)
            hb = vertical_hit(pt(bot.l), pt(bot.r), p)
            yield ((-1, 1), Portal((ht, self._tag(top, ht)), (p, v), -1), (self.key_top(top, ht), (v, 0)),
                   lambda v=v: self._go_left(top, self.edge(v, *self.pred(v, jl)), v, jl, (1, 0)))
            yield ((-1, 2), Portal((p, v), (hb, self._tag(bot, hb)), -1), ((v, 0), self.key_bot(bot, hb)),
                   lambda v=v: self._go_left(self.edge(v, *self.succ(v, jl)), bot, v, jl, (1, 0)))

    def _past_right(self, v: int, jv: int, keep: UEdge, v_on_top: bool) -> "WalkState":
        """Cell right of the wall hanging from (or standing on) ``v``."""
        if v_on_top:
            w, j = self.pred(v, jv)
            if self._lex(v, w):
                return self._go_right(self.edge(v, w, j), keep, v, jv, (-1, 0))
            return self._go_right(self.shoot_vertex(v, jv, UP), keep, v, jv, (-1, 2))
        w, j = self.succ(v, jv)
        if self._lex(v, w):
            return self._go_right(keep, self.edge(v, w, j), v, jv, (-1, 0))
        return self._go_right(keep, self.shoot_vertex(v, jv, DOWN), v, jv, (-1, 1))

    def _past_left(self, v: int, jv: int, keep: UEdge, v_on_top: bool) -> "WalkState":
        if v_on_top:
            w, j = self.succ(v, jv)
            if self._lex(w, v):
                return self._go_left(self.edge(v, w, j), keep, v, jv, (1, 0))
            return self._go_left(self.shoot_vertex(v, jv, UP), keep, v, jv, (1, 2))
        w, j = self.pred(v, jv)
        if self._lex(w, v):
            return self._go_left(keep, self.edge(v, w, j), v, jv, (1, 0))
        return self._go_left(keep, self.shoot_vertex(v, jv, DOWN), v, jv, (1, 1))

    def _go_right(self, top: UEdge, bot: UEdge, lv: int, jl: int, arrival: tuple
                  ) -> "WalkState":
        rv, jr = self.close_right(top, bot, lv)
        return WalkState(Cell(top, bot, lv, rv, arrival), jl, jr)

    def _go_left(self, top: UEdge, bot: UEdge, rv: int, jr: int, arrival: tuple
                 ) -> "WalkState":
        lv, jl = self.close_left(top, bot, rv)
        return WalkState(Cell(top, bot, lv, rv, arrival), jl, jr)


@dataclass(frozen=True)
class WalkState:
    """A cell of the sleeve plus the route pieces holding its wall vertices."""

    cell: Cell
    jl: int
    jr: int


# --------------------------------------------------------------------------- funnel


FINAL = Portal((None, NONE), (None, NONE), 0)


class Outcome:
    NEW_TRIPLE = "new-triple"
    EMITTED = "emitted"
    TERMINAL = "terminal"


@dataclass(frozen=True)
class ConeTriple:
    """Apex ``v`` and the two arm ends ``r1`` (left) and ``r2`` (right).

    Every point is ``(point, vertex id or NONE)``. The geodesic continues
    inside the cone and every vertex up to ``v`` has been emitted.
    """

    v: tuple
    r1: tuple
    r2: tuple


@dataclass
class FunnelState:
    """The funnel over the walls crossed so far.

    ``i1``/``i2`` are the wall indices of the arm ends and ``w1``/``w2`` the
    walk states just past those walls, kept so the walk can resume from an
    arm end once it becomes the apex. ``cursor`` is the last wall fed to the
    funnel and ``walk`` the state after it (``None`` once ``q`` is reached).
    """

    cone: ConeTriple
    i1: int
    i2: int
    w1: WalkState
    w2: WalkState
    cursor: int
    walk: Optional[WalkState]
    done: bool = False


def _same(a: tuple, b: tuple) -> bool:
    return a[0] == b[0]


def standard_step(state: FunnelState, portal: Portal, q: Point) -> tuple[str, Optional[tuple]]:
    """Feed the wall with index ``state.cursor`` to the funnel.

    Tightens an arm when the wall's end lies inside the cone. If it lies
    beyond the opposite arm, that arm's end is a bend of the geodesic: it
    becomes the apex and is returned for emission; the caller then replays
    the walls after it (:func:`catch_up`).

    Returns:
        ``(Outcome, emitted point or None)``.
    """
    cone = state.cone
    apex, left, right = cone.v, cone.r1, cone.r2
    a = apex[0]
    if portal is FINAL:
        # the target itself: it is seen directly unless it lies beyond an arm
        if not _same(apex, left) and cross(a, left[0], q) > 0:
            state.cone = ConeTriple(left, left, left)
            state.i2, state.w2 = state.i1, state.w1
            return Outcome.EMITTED, left
        if not _same(apex, right) and cross(a, right[0], q) < 0:
            state.cone = ConeTriple(right, right, right)
            state.i1, state.w1 = state.i2, state.w2
            return Outcome.EMITTED, right
        state.done = True
        return Outcome.TERMINAL, None
    cone, moved_left, moved_right, beyond = _feed(cone, portal)
    if moved_right:
        state.i2, state.w2 = state.cursor, state.walk
    if beyond == LEFT_SIDE:
        state.cone = ConeTriple(cone.r1, cone.r1, cone.r1)
        state.i2, state.w2 = state.i1, state.w1
        return Outcome.EMITTED, cone.r1
    if beyond == RIGHT_SIDE:
        state.cone = ConeTriple(cone.r2, cone.r2, cone.r2)
        state.i1, state.w1 = state.i2, state.w2
        return Outcome.EMITTED, cone.r2
    if moved_left:
        state.i1, state.w1 = state.cursor, state.walk
    state.cone = cone
    return Outcome.NEW_TRIPLE, None


LEFT_SIDE = 1
RIGHT_SIDE = -1


def _feed(cone: ConeTriple, portal: Portal) -> tuple[ConeTriple, bool, bool, int]:
    """One wall against a cone.

    Returns:
        The cone after tightening, whether each arm moved, and the side
        (:data:`LEFT_SIDE` or :data:`RIGHT_SIDE`) whose arm the wall passes
        wholly beyond, or 0. When a wall passes beyond an arm the other arm
        may already have moved.
    """
    apex, left, right = cone.v, cone.r1, cone.r2
    a = apex[0]
    pl, pr = portal.left, portal.right
    moved_left = moved_right = False
    if cross(a, right[0], pr[0]) >= 0:
        if _same(apex, right) or cross(a, left[0], pr[0]) < 0:
            right, moved_right = pr, True
        else:
            return cone, False, False, LEFT_SIDE
    if cross(a, left[0], pl[0]) <= 0:
        if _same(apex, left) or cross(a, right[0], pl[0]) > 0:
            left, moved_left = pl, True
        else:
            return ConeTriple(apex, left, right), False, moved_right, RIGHT_SIDE
    return ConeTriple(apex, left, right), moved_left, moved_right, 0


def catch_up(state: FunnelState) -> FunnelState:
    """Rewind the walk to the wall of the new apex, keeping later walls for replay."""
    state.cursor = state.i1
    state.walk = state.w1
    return state


@dataclass
class Lookahead:
    """A funnel rooted at one arm end of the main funnel, fed the same walls.

    It holds exactly what a replay from that arm end would rebuild, so when
    the arm end becomes the apex the walk goes on without rewinding.
    ``spoiled`` marks that the replay would itself have bent, which this
    copy cannot follow.
    """

    cone: ConeTriple
    i1: int
    i2: int
    w1: WalkState
    w2: WalkState
    spoiled: bool = False

    @classmethod
    def rooted(cls, root: tuple, i: int, walk: WalkState) -> "Lookahead":
        return cls(ConeTriple(root, root, root), i, i, walk, walk)

    def feed(self, portal: Portal, i: int, walk: WalkState) -> None:
        if self.spoiled:
            return
        cone, moved_left, moved_right, beyond = _feed(self.cone, portal)
        if beyond:
            self.spoiled = True
            return
        if moved_left:
            self.i1, self.w1 = i, walk
        if moved_right:
            self.i2, self.w2 = i, walk
        self.cone = cone

    def take_over(self, state: FunnelState) -> bool:
        """Install this funnel as the main one if it is usable."""
        if self.spoiled:
            return False
        state.cone = self.cone
        state.i1, state.i2, state.w1, state.w2 = self.i1, self.i2, self.w1, self.w2
        return True


class PortalRing:
    """The most recent walls with the walk states after them; O(capacity) words."""

    def __init__(self, capacity: int):
        self.capacity = max(1, capacity)
        self.items: deque = deque(maxlen=self.capacity)
        self.first = 1  # wall index of items[0]

    def get(self, i: int):
        k = i - self.first
        if 0 <= k < len(self.items):
            return self.items[k]
        return None

    def push(self, i: int, item) -> None:
        if self.items and i != self.first + len(self.items):
            return  # replay below the window
        if not self.items:
            self.first = i
        elif len(self.items) == self.capacity:
            self.first += 1
        self.items.append(item)


def extend(state: FunnelState, region: RouteRegion, ring: PortalRing, q: Point,
           anchor: tuple) -> Portal:
    """Move the cursor to the next wall of the sleeve and return it.

    Walls still in the ring are reused; otherwise one more cell is walked.
    """
    nxt = state.cursor + 1
    hit = ring.get(nxt)
    if hit is None:
        hit = _advance(region, state.walk, q, anchor)
        ring.push(nxt, hit)
    state.cursor = nxt
    portal, state.walk = hit
    return portal


def _advance(region: RouteRegion, w: WalkState, q: Point, anchor: tuple
             ) -> tuple[Portal, Optional[WalkState]]:
    c = w.cell
    if region.contains(c, q):
        return FINAL, None
    n = region.scene.n
    for portal, (ka, kb), make in region.exits(c, w.jl, w.jr):
        if in_arc(anchor, ka, kb, n):
            return portal, make()
    raise InvariantViolation(f"no wall of cell {c} leads towards the target")


# --------------------------------------------------------------------------- query


@dataclass
class PathSummary:
    vertices: int
    ray_shots: int
    scans: int
    peak_words: int
    length: float
    path: list = field(default_factory=list, repr=False)


def query(d: Decomposition, p: Point, q: Point,
          sink: Optional[Callable[[Point], None]] = None) -> PathSummary:
    """Stream the shortest path from ``p`` to ``q`` inside the polygon.

    Runs under a fresh meter with budget ``LinearInS(d.s)``.

    Args:
        d: a decomposition of the polygon.
        p, q: strictly interior points (integer or rational coordinates).
        sink: receives ``p``, each bend vertex and ``q`` in order.

    Raises:
        OutsidePolygon: if an endpoint is not strictly inside.
    """
    emitted: list = []
    tally = {"count": 0, "length": 0.0, "last": None}

    def emit(x):
        if tally["last"] is not None:
            tally["length"] += math.dist(tally["last"], x)
        tally["last"] = x
        tally["count"] += 1
        if sink is not None:
            sink(x)
        else:
            emitted.append(x)

    with metered(LinearInS(d.s)) as m:
        _run_query(d, p, q, emit)
    return PathSummary(tally["count"], m.counters["ray_shots"], m.counters["scans"],
                       m.peak_words, tally["length"], emitted)


def _run_query(d: Decomposition, p: Point, q: Point, emit: Callable) -> None:
    cap = piece_capacity(d.s)
    with words(2 * (DERIVED_WORDS + 2)):
        a = locate(d, p)
        b = locate(d, q)
        if tuple(p) == tuple(q):
            emit(p)
            return
        held = reserve(2 * cap)
        try:
            route = tree_route(d, a, b, budget=False)
        finally:
            release(held)
        # an endpoint on a chord must see that chord as transparent
        c = _chord_through(d, p)
        if c >= 0 and (not route or route[0] != c):
            route.insert(0, c)
            a = _other_piece(d.chords[c], a)
        c = _chord_through(d, q)
        if c >= 0 and (not route or route[-1] != c):
            route.append(c)
        held = reserve(ROUTE_WORDS * cap)
        try:
            region = RouteRegion(d, route, a)
            with words(FUNNEL_WORDS):
                _funnel_walk(region, p, q, emit, d.s)
        finally:
            release(held)


def _funnel_walk(region: RouteRegion, p: Point, q: Point, emit: Callable, s: int) -> None:
    emit(p)
    anchor_edge, anchor_hit = region.shoot(q, len(region) - 1, UP)
    anchor = region.key_top(anchor_edge, anchor_hit)
    cell, jl, jr = region.cell_at(p, 0)
    w0 = WalkState(cell, jl, jr)
    start = last = (p, NONE)
    state = FunnelState(ConeTriple(start, start, start), 0, 0, w0, w0, 0, w0)
    held = reserve(CACHE_SLOT_WORDS * max(1, s) + 2 * LOOKAHEAD_WORDS)
    try:
        ring = PortalRing(s)
        looks: list[Optional[Lookahead]] = [None, None]  # rooted at the left and right arm ends
        portal = None
        while not state.done:
            if portal is not FINAL:
                portal = extend(state, region, ring, q, anchor)
                if portal is not FINAL:
                    for lk in looks:
                        if lk is not None:
                            lk.feed(portal, state.cursor, state.walk)
            outcome, bend = standard_step(state, portal, q)
            if outcome == Outcome.NEW_TRIPLE:
                if state.i1 == state.cursor:
                    looks[0] = Lookahead.rooted(state.cone.r1, state.cursor, state.walk)
                if state.i2 == state.cursor:
                    looks[1] = Lookahead.rooted(state.cone.r2, state.cursor, state.walk)
            elif outcome == Outcome.EMITTED:
                if bend[0] != last[0]:
                    if bend[1] == NONE:
                        raise InvariantViolation(f"geodesic bends at a non-vertex {bend[0]}")
                    emit(bend[0])
                    last = bend
                heir = next((lk for lk in looks if lk is not None and lk.cone.v == bend), None)
                looks = [None, None]
                if heir is None or not heir.take_over(state):
                    catch_up(state)
                    portal = None
    finally:
        release(held)
    emit(q)


def geodesic_path(d: Decomposition, p: Point, q: Point) -> list:
    """The bend points of the shortest path, ``p`` and ``q`` included."""
    return query(d, p, q).path
