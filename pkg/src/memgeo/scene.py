"""Read-only scene model, exact predicates, workspace accounting and file formats.

Every algorithm in the package reads its input through a :class:`Scene`, which
is frozen after loading. Mutable state that an algorithm claims to keep small
is declared to a :class:`WorkspaceMeter` so the claim can be checked.
"""
from __future__ import annotations

import contextlib
import contextvars
import json
from collections import Counter
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterator, Sequence, Union

import numpy as np

COORD_LIMIT = 1 << 30

Number = Union[int, Fraction]
Point = tuple  # (x, y) with int or Fraction entries


class GeomError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(GeomError):
    """Malformed input file."""


class GeometryError(GeomError):
    """Input violates a geometric precondition (crossing, clockwise, ...)."""


class WorkspaceExceeded(GeomError):
    """A metered computation used more words than its declared budget."""


class InvariantViolation(GeomError):
    """An internal invariant failed; signals a bug or an invalid view."""


class DegenerateInput(GeomError):
    """Input is too degenerate for the requested operation."""


class OutsidePolygon(GeomError):
    """A query point does not lie strictly inside the polygon."""


class Turn(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def cross(p: Point, q: Point, r: Point) -> Number:
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orient(p: Point, q: Point, r: Point) -> Turn:
    """Exact orientation of the triple (p, q, r).

    Works for integer and rational coordinates alike; no rounding happens.
    """
    d = cross(p, q, r)
    if d > 0:
        return Turn.CCW
    if d < 0:
        return Turn.CW
    return Turn.COLLINEAR


def sign(x: Number) -> int:
    return (x > 0) - (x < 0)


def lex_less(p: Point, q: Point) -> bool:
    """Order by x, then y. This stands in for 'strictly left of'."""
    return p[0] < q[0] or (p[0] == q[0] and p[1] < q[1])


def lex_key(p: Point) -> tuple:
    return (p[0], p[1])


def dist2(p: Point, q: Point) -> Number:
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    return dx * dx + dy * dy


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the closed segments ab and cd share a point other than a common endpoint.

    Touching at a shared endpoint is allowed; any other contact counts.
    """
    shared = {tuple(a), tuple(b)} & {tuple(c), tuple(d)}
    o1, o2 = sign(cross(a, b, c)), sign(cross(a, b, d))
    o3, o4 = sign(cross(c, d, a)), sign(cross(c, d, b))
    if shared:
        if len(shared) == 2:
            return True
        # one shared endpoint: overlap only if collinear and pointing the same way
        s = shared.pop()
        oa = b if tuple(a) == s else a
        oc = d if tuple(c) == s else c
        if cross(s, oa, oc) != 0:
            return False
        return (oa[0] - s[0]) * (oc[0] - s[0]) + (oa[1] - s[1]) * (oc[1] - s[1]) > 0
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True

    def on_seg(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    return ((o1 == 0 and on_seg(a, b, c)) or (o2 == 0 and on_seg(a, b, d))
            or (o3 == 0 and on_seg(c, d, a)) or (o4 == 0 and on_seg(c, d, b)))


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Point:
    """Exact intersection of lines ab and cd (assumed non-parallel)."""
    den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    if den == 0:
        raise InvariantViolation("parallel lines have no unique intersection")
    t = Fraction((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0]), 1) / den
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def canonical_point(p: Point) -> Point:
    """Collapse integral Fractions back to ints so equal points hash equally."""
    out = []
    for c in p:
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        out.append(c)
    return (out[0], out[1])


# --------------------------------------------------------------------------- scene


POLYGON = "polygon"
PSLG = "pslg"


@dataclass(frozen=True)
class Scene:
    """Immutable vertex and edge tables.

    Polygon scenes keep their vertices in counterclockwise boundary order and
    edge ``i`` joins vertex ``i`` to vertex ``i + 1``. Pslg scenes carry an
    explicit edge list. Both expose an incidence index so the edges at a
    vertex can be listed in time proportional to its degree.
    """

    xs: tuple
    ys: tuple
    edges: tuple
    kind: str
    incidence: tuple = field(repr=False, compare=False, default=())
    np_xs: np.ndarray = field(repr=False, compare=False, default=None)
    np_ys: np.ndarray = field(repr=False, compare=False, default=None)
    np_edges: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def n(self) -> int:
        return len(self.xs)

    @property
    def m(self) -> int:
        return len(self.edges)

    def point(self, v: int) -> Point:
        return (self.xs[v], self.ys[v])

    def points(self) -> list:
        return list(zip(self.xs, self.ys))

    def incident(self, v: int) -> tuple:
        return self.incidence[v]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> Iterator[int]:
        for e in self.incidence[v]:
            yield self.other(e, v)


def build_scene(points: Sequence[Sequence[int]], edges: Sequence[Sequence[int]] | None = None,
                kind: str | None = None, validate: bool = True) -> Scene:
    """Create a scene from raw tables.

    Args:
        points: vertex coordinates as integer pairs.
        edges: explicit edge list; ``None`` means a polygon with implicit edges.
        kind: force ``"polygon"`` or ``"pslg"``; inferred from ``edges`` if omitted.
        validate: run the simplicity / crossing checks.

    Raises:
        GeometryError: on crossing edges, clockwise or self-intersecting
            polygons, duplicate vertices or out-of-range coordinates.
    """
    if kind is None:
        kind = POLYGON if edges is None else PSLG
    pts = [(int(x), int(y)) for x, y in points]
    n = len(pts)
    if kind == POLYGON:
        if n < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        edges = [(i, (i + 1) % n) for i in range(n)]
    else:
        edges = [(int(a), int(b)) for a, b in edges]
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise GeometryError(f"bad edge ({a}, {b})")
        if len({frozenset(e) for e in edges}) != len(edges):
            raise GeometryError("duplicate edge")
    for x, y in pts:
        if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
            raise GeometryError("coordinate magnitude exceeds 2^30")
    inc: list[list[int]] = [[] for _ in range(n)]
    for i, (a, b) in enumerate(edges):
        inc[a].append(i)
        inc[b].append(i)
    scene = Scene(
        xs=tuple(p[0] for p in pts),
        ys=tuple(p[1] for p in pts),
        edges=tuple(edges),
        kind=kind,
        incidence=tuple(tuple(v) for v in inc),
        np_xs=np.array([p[0] for p in pts], dtype=np.int64),
        np_ys=np.array([p[1] for p in pts], dtype=np.int64),
        np_edges=np.array(edges, dtype=np.int64).reshape(-1, 2),
    )
    if validate:
        _validate(scene)
    return scene


def _validate(scene: Scene) -> None:
    if len(set(zip(scene.xs, scene.ys))) != scene.n:
        raise GeometryError("duplicate vertices")
    if _any_crossing(scene):
        raise GeometryError("edges cross or overlap" if scene.kind == PSLG
                            else "polygon is not simple")
    if scene.kind == POLYGON and signed_area2(scene.points()) <= 0:
        raise GeometryError("polygon is clockwise")


def signed_area2(pts: Sequence[Point]) -> Number:
    """Twice the signed area of a closed polygon (positive when counterclockwise)."""
    s = 0
    k = len(pts)
    for i in range(k):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % k]
        s += x0 * y1 - x1 * y0
    return s


def _any_crossing(scene: Scene) -> bool:
    """Exact all-pairs edge test, vectorised.

    Orientation determinants of coordinates bounded by 2^30 fit in int64, so
    the numpy path is exact.
    """
    E = scene.np_edges
    if len(E) < 2:
        return False
    X, Y = scene.np_xs, scene.np_ys
    ax, ay = X[E[:, 0]], Y[E[:, 0]]
    bx, by = X[E[:, 1]], Y[E[:, 1]]
    for i in range(len(E) - 1):
        cx, cy, dx, dy = ax[i + 1:], ay[i + 1:], bx[i + 1:], by[i + 1:]
        pax, pay, pbx, pby = ax[i], ay[i], bx[i], by[i]
        o1 = np.sign((pbx - pax) * (cy - pay) - (pby - pay) * (cx - pax))
        o2 = np.sign((pbx - pax) * (dy - pay) - (pby - pay) * (dx - pax))
        o3 = np.sign((dx - cx) * (pay - cy) - (dy - cy) * (pax - cx))
        o4 = np.sign((dx - cx) * (pby - cy) - (dy - cy) * (pbx - cx))
        proper = (o1 * o2 < 0) & (o3 * o4 < 0)
        if proper.any():
            return True
        # anything touching or collinear is rare; settle it exactly in Python
        touchy = ((o1 == 0) | (o2 == 0) | (o3 == 0) | (o4 == 0))
        for j in np.nonzero(touchy)[0]:
            k = i + 1 + int(j)
            a, b = scene.edges[i]
            c, d = scene.edges[k]
            if segments_cross(scene.point(a), scene.point(b), scene.point(c), scene.point(d)):
                return True
    return False


# --------------------------------------------------------------------------- formats


def _ints(tokens: list[str], what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"non-integer {what}: {exc}") from None


def parse_poly_text(text: str) -> list[tuple[int, int]]:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 1:
        raise ParseError("first line must hold the vertex count")
    (n,) = _ints(head, "vertex count")
    if n < 0:
        raise ParseError("negative vertex count")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} coordinate lines, found {len(lines) - 1}")
    pts = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise ParseError(f"bad coordinate line: {ln!r}")
        x, y = _ints(toks, "coordinate")
        pts.append((x, y))
    return pts


def parse_pslg_json(text: str) -> tuple[list, list]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid json: {exc}") from None
    if not isinstance(obj, dict) or set(obj) != {"vertices", "edges"}:
        raise ParseError('expected an object with exactly "vertices" and "edges"')
    verts, edges = obj["vertices"], obj["edges"]

    def pairs(seq, what):
        if not isinstance(seq, list):
            raise ParseError(f"{what} must be a list")
        out = []
        for item in seq:
            if (not isinstance(item, list) or len(item) != 2
                    or not all(isinstance(c, int) and not isinstance(c, bool) for c in item)):
                raise ParseError(f"bad {what} entry: {item!r}")
            out.append((item[0], item[1]))
        return out

    return pairs(verts, "vertices"), pairs(edges, "edges")


def load_scene(source: Union[str, bytes], fmt: str = "poly-text") -> Scene:
    """Parse and validate a scene.

    Raises:
        ParseError: malformed text.
        GeometryError: invalid geometry.
    """
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(str(exc)) from None
    if fmt == "poly-text":
        return build_scene(parse_poly_text(source))
    if fmt == "pslg-json":
        verts, edges = parse_pslg_json(source)
        return build_scene(verts, edges, kind=PSLG)
    raise ParseError(f"unknown format {fmt!r}")


def load_file(path: str, fmt: str | None = None) -> Scene:
    if fmt is None:
        fmt = "pslg-json" if str(path).endswith(".json") else "poly-text"
    with open(path, "rb") as fh:
        return load_scene(fh.read(), fmt)


def serialize(scene: Scene, fmt: str | None = None) -> str:
    fmt = fmt or ("poly-text" if scene.kind == POLYGON else "pslg-json")
    if fmt == "poly-text":
        if scene.kind != POLYGON:
            raise GeometryError("only polygons have a poly-text form")
        rows = [str(scene.n)] + [f"{x} {y}" for x, y in zip(scene.xs, scene.ys)]
        return "\n".join(rows) + "\n"
    return json.dumps({"vertices": [[x, y] for x, y in zip(scene.xs, scene.ys)],
                       "edges": [list(e) for e in scene.edges]})


# --------------------------------------------------------------------------- general position


@dataclass
class PositionReport:
    collinear: list = field(default_factory=list)
    duplicate_x_pairs: int = 0

    @property
    def ok(self) -> bool:
        return not self.collinear

    @property
    def notes(self) -> list[str]:
        if self.duplicate_x_pairs:
            return [f"{self.duplicate_x_pairs} duplicate-x pairs, lexicographic tiebreak active"]
        return []


def validate_general_position(scene: Scene) -> PositionReport:
    """Report vertices collinear with an edge and count shared x-coordinates.

    Shared x-coordinates are tolerated (the lexicographic order breaks the
    tie), so they only produce a note.
    """
    rep = PositionReport()
    X, Y = scene.np_xs, scene.np_ys
    for i, (a, b) in enumerate(scene.edges):
        d = (X[b] - X[a]) * (Y - Y[a]) - (Y[b] - Y[a]) * (X - X[a])
        for c in np.nonzero(d == 0)[0]:
            c = int(c)
            if c != a and c != b:
                rep.collinear.append(tuple(sorted((a, b, c))))
    rep.collinear = sorted(set(rep.collinear))
    counts = Counter(scene.xs)
    rep.duplicate_x_pairs = sum(c * (c - 1) // 2 for c in counts.values())
    return rep


# --------------------------------------------------------------------------- triangles


def canonical_triangle(scene_or_pts, a: int, b: int, c: int) -> tuple[int, int, int]:
    """Smallest id first, counterclockwise."""
    pt = scene_or_pts.point if isinstance(scene_or_pts, Scene) else scene_or_pts.__getitem__
    if cross(pt(a), pt(b), pt(c)) < 0:
        b, c = c, b
    if b < a and b < c:
        a, b, c = b, c, a
    elif c < a and c < b:
        a, b, c = c, a, b
    return (a, b, c)


# --------------------------------------------------------------------------- meter

W_CONST = 256
W_A = 48
W_B = 256
DERIVED_WORDS = 8  # one DerivedPoint slot: two rationals, two limbs each, plus headroom


@dataclass(frozen=True)
class Constant:
    limit: int = W_CONST


@dataclass(frozen=True)
class LinearInS:
    s: int
    w_a: int = W_A
    w_b: int = W_B

    @property
    def limit(self) -> int:
        return self.w_a * self.s + self.w_b


class WorkspaceMeter:
    """Counts live mutable words of one metered invocation.

    Algorithms announce their locals with :func:`words`; the meter tracks the
    running total and its maximum and raises as soon as the budget is broken.
    It also carries named event counters (sweeps, ray shots, scans).
    """

    def __init__(self, budget=None):
        self.budget = budget
        self.live_words = 0
        self.peak_words = 0
        self.counters: Counter = Counter()

    def alloc(self, k: int) -> None:
        self.live_words += k
        if self.live_words > self.peak_words:
            self.peak_words = self.live_words
            if self.budget is not None and self.peak_words > self.budget.limit:
                raise WorkspaceExceeded(
                    f"{self.peak_words} words exceed the budget of {self.budget.limit}")

    def free(self, k: int) -> None:
        self.live_words -= k


_METER: contextvars.ContextVar = contextvars.ContextVar("memgeo_meter", default=None)
# counters survive even without a meter so un-metered runs can still report them
_FREE_COUNTERS: contextvars.ContextVar = contextvars.ContextVar("memgeo_counters", default=None)


def current_meter() -> WorkspaceMeter | None:
    return _METER.get()


@contextlib.contextmanager
def words(k: int):
    """Declare ``k`` live words for the duration of the block."""
    m = _METER.get()
    if m is None:
        yield
        return
    m.alloc(k)
    try:
        yield
    finally:
        m.free(k)


def reserve(k: int) -> int:
    """Charge ``k`` words to the current meter until :func:`release`; returns ``k``."""
    m = _METER.get()
    if m is not None:
        m.alloc(k)
    return k


def release(k: int) -> None:
    m = _METER.get()
    if m is not None:
        m.free(k)


def count(name: str, k: int = 1) -> None:
    m = _METER.get()
    if m is not None:
        m.counters[name] += k
        return
    c = _FREE_COUNTERS.get()
    if c is not None:
        c[name] += k


@contextlib.contextmanager
def metered(budget=None):
    """Run the block under a fresh meter and yield it."""
    m = WorkspaceMeter(budget)
    tok = _METER.set(m)
    try:
        yield m
    finally:
        _METER.reset(tok)


@contextlib.contextmanager
def counting():
    """Collect event counters without enforcing any budget."""
    c: Counter = Counter()
    tok = _FREE_COUNTERS.set(c)
    try:
        yield c
    finally:
        _FREE_COUNTERS.reset(tok)


def meter_scope(budget, body, *args, **kwargs):
    """Run ``body`` under a meter with the given budget.

    Returns:
        ``(result, peak_words)``.

    Raises:
        WorkspaceExceeded: if ``body`` exceeds the budget.
    """
    with metered(budget) as m:
        result = body(*args, **kwargs)
    return result, m.peak_words
