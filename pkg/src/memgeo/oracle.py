"""Brute-force reference implementations.

Nothing here is metered or clever. These functions hold all the memory they
like and are meant to be obviously right, so the space-bounded algorithms can
be checked against them.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from memgeo.scene import (POLYGON, GeometryError, InvariantViolation, OutsidePolygon, Point,
                          Scene, canonical_triangle, cross, lex_less, segments_cross,
                          signed_area2)


# --------------------------------------------------------------------------- hull


def convex_hull(points: Sequence[Point]) -> list[int]:
    """Indices of the convex hull in counterclockwise order (monotone chain).

    Collinear boundary points are dropped.
    """
    idx = sorted(range(len(points)), key=lambda i: (points[i][0], points[i][1]))
    if len(idx) <= 2:
        return idx

    def half(order):
        out: list[int] = []
        for i in order:
            while len(out) >= 2 and cross(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = half(idx)
    upper = half(idx[::-1])
    return lower[:-1] + upper[:-1]


# --------------------------------------------------------------------------- triangulations


def _point_in_triangle(a: Point, b: Point, c: Point, p: Point) -> bool:
    """Closed containment for a counterclockwise triangle."""
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def earclip(scene: Scene) -> set:
    """Ear-clipping triangulation of a simple counterclockwise polygon.

    Raises:
        GeometryError: if no ear can be found (the polygon is not simple).
    """
    if scene.kind != POLYGON:
        raise GeometryError("ear clipping needs a polygon")
    pts = scene.points()
    ring = list(range(scene.n))
    out = set()
    while len(ring) > 3:
        k = len(ring)
        for i in range(k):
            a, b, c = ring[i - 1], ring[i], ring[(i + 1) % k]
            if cross(pts[a], pts[b], pts[c]) <= 0:
                continue
            if any(_point_in_triangle(pts[a], pts[b], pts[c], pts[w])
                   for w in ring if w not in (a, b, c)):
                continue
            out.add(canonical_triangle(scene, a, b, c))
            ring.pop(i)
            break
        else:
            raise GeometryError("no ear found; polygon is not simple")
    out.add(canonical_triangle(scene, *ring))
    return out


def stack_monotone_triangulate(chain: Sequence[tuple[int, Point]]) -> set:
    """The classic stack triangulation of a mountain.

    Args:
        chain: ``(id, point)`` for ``a_1 .. a_k`` in boundary order, the base
            being ``a_1 a_k`` below the chain.

    Returns:
        Set of triangles as sorted id triples.

    Raises:
        InvariantViolation: if the chain is not x-monotone above its base.
    """
    k = len(chain)
    if k < 3:
        raise InvariantViolation("a mountain has at least three vertices")
    ids = [c[0] for c in chain]
    pts = {c[0]: c[1] for c in chain}
    for i in range(k - 1):
        if not lex_less(chain[i][1], chain[i + 1][1]):
            raise InvariantViolation("chain is not monotone")
    base_a, base_b = chain[0][1], chain[-1][1]
    for _, p in chain[1:-1]:
        if cross(base_a, base_b, p) <= 0:
            raise InvariantViolation("chain vertex on or below the base")
    out = set()
    stack = [ids[0], ids[1]]
    for v in ids[2:-1]:
        while len(stack) >= 2 and cross(pts[stack[-2]], pts[stack[-1]], pts[v]) < 0:
            out.add(tuple(sorted((stack[-2], stack[-1], v))))
            stack.pop()
        stack.append(v)
    last = ids[-1]
    for a, b in zip(stack, stack[1:]):
        out.add(tuple(sorted((a, b, last))))
    return out


@dataclass
class TriangulationReport:
    ok: bool
    problems: list = field(default_factory=list)


def check_triangulation(scene: Scene, triangles: Iterable[Sequence[int]],
                        pairwise: Optional[bool] = None, region: str = "hull"
                        ) -> TriangulationReport:
    """Exact validity test for a triangulation of the scene's convex hull.

    With ``region="polygon"`` the target is the interior of a polygon scene
    instead, whose boundary edges play the role of the hull edges.

    Checks: no duplicates, no degenerate triangles, every vertex used and none
    strictly inside a triangle or an edge, the triangle count ``2n - h - 2``,
    total area equal to the hull area, every shared edge used by exactly two
    triangles on opposite sides and every hull edge by one, and every input
    edge present. Small inputs also get an all-pairs overlap test.
    """
    pts = scene.points()
    n = scene.n
    probs: list[str] = []
    tris = [tuple(t) for t in triangles]
    canon = [canonical_triangle(scene, *t) for t in tris]
    if len(set(canon)) != len(canon):
        probs.append("duplicate triangles")
    canon = sorted(set(canon))
    hull = convex_hull(pts) if region == "hull" else list(range(n))
    h = len(hull)
    want = 2 * n - h - 2 if region == "hull" else n - 2
    if len(canon) != want:
        probs.append(f"expected {want} triangles, got {len(canon)}")
    area = 0
    half_edges: dict = {}
    used = set()
    for a, b, c in canon:
        d = cross(pts[a], pts[b], pts[c])
        if d <= 0:
            probs.append(f"degenerate triangle {(a, b, c)}")
            continue
        area += d
        used.update((a, b, c))
        for u, v in ((a, b), (b, c), (c, a)):
            half_edges[(u, v)] = half_edges.get((u, v), 0) + 1
    hull_area = signed_area2([pts[i] for i in hull]) if h >= 3 else 0
    if area != hull_area:
        probs.append(f"area {area} differs from hull area {hull_area}")
    if len(used) != n:
        probs.append(f"{n - len(used)} vertices unused")
    hull_set = {(hull[i], hull[(i + 1) % h]) for i in range(h)}
    for (u, v), c in half_edges.items():
        if c > 1:
            probs.append(f"half-edge {(u, v)} used {c} times")
        if (u, v) in hull_set:
            continue
        if (v, u) not in half_edges:
            probs.append(f"edge {(u, v)} has a triangle on one side only")
    for u, v in hull_set:
        if (u, v) not in half_edges:
            probs.append(f"hull edge {(u, v)} missing")
    und = {frozenset(e) for e in half_edges}
    for a, b in scene.edges:
        if frozenset((a, b)) not in und:
            probs.append(f"input edge {(a, b)} missing")
    # no vertex inside a triangle or on an edge interior (vectorised, exact in int64)
    X, Y = scene.np_xs, scene.np_ys
    for a, b, c in canon:
        s1 = (X[b] - X[a]) * (Y - Y[a]) - (Y[b] - Y[a]) * (X - X[a])
        s2 = (X[c] - X[b]) * (Y - Y[b]) - (Y[c] - Y[b]) * (X - X[b])
        s3 = (X[a] - X[c]) * (Y - Y[c]) - (Y[a] - Y[c]) * (X - X[c])
        inside = (s1 >= 0) & (s2 >= 0) & (s3 >= 0)
        inside[[a, b, c]] = False
        if inside.any():
            probs.append(f"vertex {int(np.nonzero(inside)[0][0])} lies in triangle {(a, b, c)}")
    if pairwise is None:
        pairwise = len(canon) <= 80
    if pairwise:
        for i in range(len(canon)):
            for j in range(i + 1, len(canon)):
                if triangles_overlap([pts[v] for v in canon[i]], [pts[v] for v in canon[j]]):
                    probs.append(f"triangles {canon[i]} and {canon[j]} overlap")
    return TriangulationReport(not probs, probs)


def triangles_overlap(t1: Sequence[Point], t2: Sequence[Point]) -> bool:
    """True iff two counterclockwise triangles share interior points (separating-axis test)."""
    for tri, other in ((t1, t2), (t2, t1)):
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            if all(cross(a, b, p) <= 0 for p in other):
                return False
    return True


# --------------------------------------------------------------------------- trapezoidal map


def naive_trapezoidation(scene: Scene, interior_only: Optional[bool] = None) -> set:
    """Full vertical decomposition by slabs between consecutive vertices.

    Each slab lists the edges spanning it in vertical order; slab pieces with
    the same bounding edges are merged across walls that do not pass between
    them. Cells are returned as ``(top, bottom, left, right)`` keys matching
    :meth:`memgeo.sweeps.Trapezoid.key`.
    """
    if interior_only is None:
        interior_only = scene.kind == POLYGON
    pts = scene.points()
    if scene.m == 0:
        return {(None, None, None, None)}
    order = sorted(range(scene.n), key=lambda i: (pts[i][0], pts[i][1]))
    edges = [(a, b) if lex_less(pts[a], pts[b]) else (b, a) for a, b in scene.edges]

    def below(f, g):
        (a, b), (c, d) = f, g
        pa, pb, pc, pd = pts[a], pts[b], pts[c], pts[d]
        if a == c:
            return cross(pa, pb, pd) > 0
        if b == d:
            return cross(pa, pb, pc) > 0
        if lex_less(pc, pa):
            return cross(pc, pd, pa) < 0
        return cross(pa, pb, pc) > 0

    rank = {v: i for i, v in enumerate(order)}
    cells = set()
    open_cells: dict = {}  # (bottom, top) -> left vertex
    for si in range(-1, scene.n):
        # slab between order[si] and order[si+1]
        lo = rank_lo = si
        spanning = [e for e in edges if rank[e[0]] <= rank_lo and rank[e[1]] >= rank_lo + 1]
        spanning.sort(key=cmp_to_key(lambda f, g: -1 if below(f, g) else 1))
        bounds = [None] + spanning + [None]
        left_v = order[si] if si >= 0 else None
        right_v = order[si + 1] if si + 1 < scene.n else None
        current = {}
        for bot, top in zip(bounds, bounds[1:]):
            key = (bot, top)
            start = open_cells.get(key, left_v)
            current[key] = start
        # close every piece whose right end is the wall at right_v
        nxt = {}
        for (bot, top), start in current.items():
            if right_v is None:
                cells.add((top, bot, start, None))
                continue
            rp = pts[right_v]
            above_bot = bot is None or right_v in bot or cross(pts[bot[0]], pts[bot[1]], rp) > 0
            below_top = top is None or right_v in top or cross(pts[top[0]], pts[top[1]], rp) < 0
            if above_bot and below_top:
                cells.add((top, bot, start, right_v))
            else:
                nxt[(bot, top)] = start
        open_cells = nxt
        del lo
    if interior_only:
        n = scene.n

        def interior(cell):
            top, bot = cell[0], cell[1]
            if top is not None:
                a, b = top
                return (b + 1) % n == a
            if bot is not None:
                a, b = bot
                return (a + 1) % n == b
            return False

        cells = {c for c in cells if interior(c)}
    return cells


# --------------------------------------------------------------------------- shortest paths


@dataclass
class PathPolyline:
    points: list
    length2_terms: list  # squared lengths of the legs, exact

    @property
    def length(self) -> float:
        return float(sum(mpmath.sqrt(mpmath.mpf(Fraction(t).numerator) / Fraction(t).denominator)
                         for t in self.length2_terms))


def _scaled(points: Sequence[Point]) -> tuple[list, int]:
    den = 1
    for p in points:
        for c in p:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
    return [(int(p[0] * den), int(p[1] * den)) for p in points], den


def point_in_polygon(poly: Sequence[Point], p: Point) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (exact)."""
    k = len(poly)
    inside = False
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return 0
        if (a[1] > p[1]) != (b[1] > p[1]):
            # x of the crossing compared exactly
            lhs = (p[0] - a[0]) * (b[1] - a[1])
            rhs = (b[0] - a[0]) * (p[1] - a[1])
            if (b[1] - a[1] > 0 and lhs < rhs) or (b[1] - a[1] < 0 and lhs > rhs):
                inside = not inside
    return 1 if inside else -1


def _visible_from(nodes: np.ndarray, i: int, ex: np.ndarray, ey: np.ndarray,
                  fx: np.ndarray, fy: np.ndarray, poly2: list, obj: bool) -> np.ndarray:
    """Boolean mask of nodes visible from node ``i`` inside the polygon."""
    ax, ay = nodes[i]
    bx, by = nodes[:, 0], nodes[:, 1]
    # orientations of edge endpoints relative to segment a->b: shape (nodes, edges)
    dxb = (bx - ax)[:, None]
    dyb = (by - ay)[:, None]
    o1 = np.sign(dxb * (ey[None, :] - ay) - dyb * (ex[None, :] - ax))
    o2 = np.sign(dxb * (fy[None, :] - ay) - dyb * (fx[None, :] - ax))
    # orientations of a and b relative to each edge
    gx, gy = (fx - ex)[None, :], (fy - ey)[None, :]
    o3 = np.sign(gx * (ay - ey[None, :]) - gy * (ax - ex[None, :]))
    o4 = np.sign(gx * (by[:, None] - ey[None, :]) - gy * (bx[:, None] - ex[None, :]))
    proper = (o1 * o2 < 0) & (o3 * o4 < 0)
    blocked = proper.any(axis=1)
    # a polygon vertex strictly inside the open segment also blocks (or grazes): treat as blocked
    vx, vy = ex, ey
    ov = dxb * (vy[None, :] - ay) - dyb * (vx[None, :] - ax)
    dot1 = (vx[None, :] - ax) * dxb + (vy[None, :] - ay) * dyb
    len2 = dxb * dxb + dyb * dyb
    on_open = (ov == 0) & (dot1 > 0) & (dot1 < len2)
    blocked |= on_open.any(axis=1)
    vis = ~blocked
    vis[i] = False
    # midpoint must be inside, except along a polygon edge
    n = len(poly2)
    for j in np.nonzero(vis)[0]:
        if i < n and j < n and (j - i) % n in (1, n - 1):
            continue
        mid = (ax + nodes[j, 0], ay + nodes[j, 1])
        if point_in_polygon(poly2, mid) != 1:
            vis[j] = False
    return vis


def visgraph_shortest_path(scene: Scene, p: Point, q: Point) -> PathPolyline:
    """Shortest path inside a polygon through its visibility graph.

    Visibility is decided exactly. Leg lengths are compared in double
    precision and near ties are re-decided with 60-digit arithmetic.

    Raises:
        OutsidePolygon: if ``p`` or ``q`` is not strictly inside.
    """
    poly = scene.points()
    for r in (p, q):
        if point_in_polygon(poly, r) != 1:
            raise OutsidePolygon(f"{r} is not strictly inside the polygon")
    if tuple(p) == tuple(q):
        return PathPolyline([p], [])
    raw = poly + [tuple(p), tuple(q)]
    scaled, _ = _scaled(raw)
    big = max(max(abs(x), abs(y)) for x, y in scaled)
    obj = big >= (1 << 29)
    dt = object if obj else np.int64
    nodes = np.array(scaled, dtype=dt)
    n = scene.n
    ex = np.array([scaled[i][0] for i in range(n)], dtype=dt)
    ey = np.array([scaled[i][1] for i in range(n)], dtype=dt)
    fx = np.array([scaled[(i + 1) % n][0] for i in range(n)], dtype=dt)
    fy = np.array([scaled[(i + 1) % n][1] for i in range(n)], dtype=dt)
    poly2 = [(2 * x, 2 * y) for x, y in scaled[:n]]
    src, dst = n, n + 1
    mpmath.mp.dps = 60
    dist = {src: 0.0}
    exact = {src: mpmath.mpf(0)}
    prev: dict = {}
    done = set()
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == dst:
            break
        vis = _visible_from(nodes, u, ex, ey, fx, fy, poly2, obj)
        for w in np.nonzero(vis)[0]:
            w = int(w)
            if w in done:
                continue
            leg2 = (int(nodes[w, 0]) - int(nodes[u, 0])) ** 2 + (int(nodes[w, 1]) - int(nodes[u, 1])) ** 2
            nd = exact[u] + mpmath.sqrt(leg2)
            if w not in exact or nd < exact[w] - mpmath.mpf(10) ** -40 or (
                    abs(nd - exact[w]) <= mpmath.mpf(10) ** -40 and u < prev.get(w, u + 1)):
                exact[w] = nd
                dist[w] = float(nd)
                prev[w] = u
                heapq.heappush(heap, (float(nd), w))
    if dst not in done:
        raise InvariantViolation("target unreachable")
    seq = [dst]
    while seq[-1] != src:
        seq.append(prev[seq[-1]])
    seq.reverse()
    pts = [raw[i] for i in seq]
    terms = [(pts[i + 1][0] - pts[i][0]) ** 2 + (pts[i + 1][1] - pts[i][1]) ** 2
             for i in range(len(pts) - 1)]
    return PathPolyline(pts, terms)


def segment_inside(scene: Scene, a: Point, b: Point) -> bool:
    """Closed segment ab lies in the closed polygon (exact; used by tests)."""
    poly = scene.points()
    for i in range(scene.n):
        c, d = poly[i], poly[(i + 1) % scene.n]
        oa, ob = cross(c, d, a), cross(c, d, b)
        oc, od = cross(a, b, c), cross(a, b, d)
        if oa * ob < 0 and oc * od < 0:
            return False
    mid = (Fraction(a[0] + b[0], 2), Fraction(a[1] + b[1], 2))
    return point_in_polygon(poly, mid) >= 0


def chords_cross(scene: Scene, c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    """Two vertex-to-vertex segments meet somewhere other than a shared endpoint."""
    p = scene.point
    return segments_cross(p(c1[0]), p(c1[1]), p(c2[0]), p(c2[1]))
