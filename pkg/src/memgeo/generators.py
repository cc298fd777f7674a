"""Seeded random inputs and fixed fixtures for tests, scripts and benches."""
from __future__ import annotations

import math
import random
from typing import Optional

from memgeo.scene import PSLG, Scene, build_scene, cross, segments_cross

# Small named fixtures used throughout the docs and tests.
SQUARE = [(0, 0), (10, 0), (10, 10), (0, 10)]
SQ_PRIME = [(0, 0), (10, 1), (11, 10), (1, 9)]
L6 = [(0, 0), (10, 0), (10, 4), (4, 4), (4, 10), (0, 10)]
MT5 = [(0, 0), (2, 4), (4, 1), (6, 3), (8, 0)]
C5 = [(0, 0), (1, 2), (3, 3), (5, 2), (6, 0)]


def _general(points) -> bool:
    """No three points collinear: per point, no two others in the same direction."""
    for i, (x0, y0) in enumerate(points):
        seen = set()
        for j, (x, y) in enumerate(points):
            if j == i:
                continue
            dx, dy = x - x0, y - y0
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in seen:
                return False
            seen.add((dx, dy))
    return True


def star_polygon(n: int, rng: random.Random, radius: int = 1 << 20,
                 spread: float = 0.6) -> list[tuple[int, int]]:
    """Random simple polygon, star-shaped about the origin, counterclockwise.

    Angles are jittered around a regular spacing and radii drawn from
    ``[(1 - spread) R, R]``; retries until no three vertices are collinear
    and the result is simple.
    """
    while True:
        step = 2 * math.pi / n
        angles = [(i + rng.uniform(0.1, 0.9)) * step for i in range(n)]
        pts = []
        for a in angles:
            r = radius * rng.uniform(1 - spread, 1.0)
            pts.append((int(round(r * math.cos(a))), int(round(r * math.sin(a)))))
        if len(set(pts)) < n or not _general(pts):
            continue
        try:
            build_scene(pts)
        except Exception:
            continue
        return pts


def random_mountain(k: int, rng: random.Random, width: Optional[int] = None
                    ) -> list[tuple[int, int]]:
    """Random mountain with chain above the base ``a_1 a_k``."""
    width = width or 16 * k
    while True:
        xs = sorted(rng.sample(range(1, width), k - 2))
        pts = [(0, 0)] + [(x, rng.randint(1, width)) for x in xs] + [(width, 0)]
        if not _general(pts):
            continue
        return pts


def random_pslg(n: int, rng: random.Random, box: int = 1 << 16, density: float = 1.5
                ) -> Scene:
    """Random points with a greedy set of non-crossing segments."""
    pts: set = set()
    while len(pts) < n:
        pts.add((rng.randint(0, box), rng.randint(0, box)))
    pl = sorted(pts)
    rng.shuffle(pl)
    edges: list = []
    seen: set = set()
    for _ in range(int(density * n)):
        a, b = rng.sample(range(n), 2)
        key = (min(a, b), max(a, b))
        if key in seen:
            continue
        if any(cross(pl[a], pl[b], pl[c]) == 0 and c not in (a, b) and
               min(pl[a][0], pl[b][0]) <= pl[c][0] <= max(pl[a][0], pl[b][0]) and
               min(pl[a][1], pl[b][1]) <= pl[c][1] <= max(pl[a][1], pl[b][1])
               for c in range(n)):
            continue
        if any(segments_cross(pl[a], pl[b], pl[c], pl[d]) for c, d in edges):
            continue
        seen.add(key)
        edges.append((a, b))
    return build_scene(pl, edges, kind=PSLG)


def comb_polygon(teeth: int, scale: int = 1, seed: int = 0) -> list[tuple[int, int]]:
    """A comb: ``teeth`` vertical slots over a base bar; ``4 teeth + 2`` vertices.

    Coordinates get a seeded jitter, redrawn until no three vertices are
    collinear.
    """
    rng = random.Random(seed)
    w = 400_000

    def j():
        return rng.randint(0, 9999)

    while True:
        top = []
        for i in range(teeth):
            x0 = i * w
            top.append((x0 + 20_000 + j(), 1_000_000 + j()))
            top.append((x0 + 140_000 + j(), 10_000_000 + j()))
            top.append((x0 + 260_000 + j(), 10_000_000 + j()))
            top.append((x0 + 380_000 + j(), 1_000_000 + j()))
        pts = [(0, 0), (teeth * w + 100_000, rng.randint(1, 50_000))] + top[::-1]
        pts = [(x * scale, y * scale) for x, y in pts]
        if _general(pts):
            build_scene(pts)
            return pts


def spiral_polygon(turns_pts: int, scale: int = 1, seed: int = 0) -> list[tuple[int, int]]:
    """A thick winding corridor: a polygonal spiral band, counterclockwise.

    The band follows an Archimedean spiral with ``turns_pts`` samples on each
    side, so ``n = 2 * turns_pts``. Geodesics between its two ends bend at
    many reflex vertices, which makes it the corridor-heavy fixture. A small
    seeded jitter keeps the vertices in general position.
    """
    m = turns_pts
    rng = random.Random(seed)
    inner, outer = [], []
    for i in range(m):
        t = 0.35 * i + 1.0
        r_in = 60.0 * t
        r_out = 60.0 * t + 48.0
        inner.append((r_in * math.cos(t) + rng.uniform(-2, 2), r_in * math.sin(t) + rng.uniform(-2, 2)))
        outer.append((r_out * math.cos(t) + rng.uniform(-2, 2), r_out * math.sin(t) + rng.uniform(-2, 2)))
    return [(int(round(x * 16 * scale)), int(round(y * 16 * scale))) for x, y in outer + inner[::-1]]


def interior_point(pts, i: int) -> tuple:
    """An exact point strictly inside the polygon, just left of edge ``i -> i+1``.

    Starts a quarter edge-length inward from the edge's midpoint and halves
    the offset until the point is inside.
    """
    from fractions import Fraction

    from memgeo.oracle import point_in_polygon

    n = len(pts)
    (ax, ay), (bx, by) = pts[i % n], pts[(i + 1) % n]
    mx, my = Fraction(ax + bx, 2), Fraction(ay + by, 2)
    nx, ny = Fraction(ay - by), Fraction(bx - ax)
    delta = Fraction(1, 4)
    for _ in range(200):
        p = (mx + delta * nx, my + delta * ny)
        p = tuple(c.numerator if c.denominator == 1 else c for c in p)
        if point_in_polygon(pts, p) > 0:
            return p
        delta /= 2
    raise ValueError("no interior point found near the edge")
