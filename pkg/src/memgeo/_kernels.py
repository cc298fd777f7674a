"""Compiled single-pass scans over integer vertex tables.

Every determinant evaluated here is the orientation of three input vertices.
With coordinates bounded by 2^30 such a value is at most twice the area of a
triangle inside a square of side 2^31, i.e. 2^62, so int64 arithmetic is exact.

Vertex sets are described by cyclic runs ``R[j] = (a, b)`` over ``0..n-1``;
a whole scene is the single run ``(0, n-1)``. Edges come either from an
explicit ``E`` table (with CSR adjacency ``AP``/``AI``) or, when ``E`` is
empty, from the runs themselves: the path ``a..b`` inside each run plus a
connector from each run's end to the next run's start.

The frame sign ``sg`` rotates the plane by 180 degrees when it is -1. That
rotation keeps orientations, so only lexicographic tests look at ``sg``.

Kernels return the number of items they inspected so callers can charge the
scan to the meter.
"""
from __future__ import annotations

import numpy as np
from numba import njit

NONE = -1


@njit(cache=True)
def orient(X, Y, a, b, c):
    d = (X[b] - X[a]) * (Y[c] - Y[a]) - (Y[b] - Y[a]) * (X[c] - X[a])
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


@njit(cache=True)
def lex_lt(X, Y, sg, a, b):
    xa = sg * X[a]
    xb = sg * X[b]
    if xa != xb:
        return xa < xb
    return sg * Y[a] < sg * Y[b]


@njit(cache=True)
def dist2(X, Y, a, b):
    dx = X[b] - X[a]
    dy = Y[b] - Y[a]
    return dx * dx + dy * dy


@njit(cache=True)
def run_len(n, a, b):
    return (b - a) % n + 1


@njit(cache=True)
def below_at(X, Y, sg, fl, fr, gl, gr):
    """True iff edge f lies below edge g on a wall both span.

    Both edges are lexicographically ordered in the active frame and do not
    cross.
    """
    if fl == gl:
        return orient(X, Y, fl, fr, gr) > 0
    if fr == gr:
        return orient(X, Y, fl, fr, gl) > 0
    if lex_lt(X, Y, sg, gl, fl):
        return orient(X, Y, gl, gr, fl) < 0
    return orient(X, Y, fl, fr, gl) > 0


# --------------------------------------------------------------------------- ray shooting


@njit(cache=True)
def _up_consider(X, Y, sg, p, a, b, best):
    if a == p or b == p:
        return
    if lex_lt(X, Y, sg, b, a):
        a, b = b, a
    if not (lex_lt(X, Y, sg, a, p) and lex_lt(X, Y, sg, p, b)):
        return
    if orient(X, Y, a, b, p) >= 0:
        return
    if best[0] == NONE or below_at(X, Y, sg, a, b, best[0], best[1]):
        best[0] = a
        best[1] = b


@njit(cache=True)
def ray_up(X, Y, n, R, E, sg, p, best):
    """Nearest edge above vertex ``p`` hit by its vertical ray.

    Edges incident to ``p`` are skipped. Writes the lex-ordered endpoints into
    ``best`` or (-1, -1) if the ray escapes.
    """
    best[0] = NONE
    best[1] = NONE
    seen = 0
    if E.shape[0] > 0:
        for k in range(E.shape[0]):
            _up_consider(X, Y, sg, p, E[k, 0], E[k, 1], best)
        return E.shape[0]
    r = R.shape[0]
    for j in range(r):
        a = R[j, 0]
        L = run_len(n, a, R[j, 1])
        for t in range(L - 1):
            _up_consider(X, Y, sg, p, (a + t) % n, (a + t + 1) % n, best)
        _up_consider(X, Y, sg, p, R[j, 1], R[(j + 1) % r, 0], best)
        seen += L
    return seen


# --------------------------------------------------------------------------- incidence


@njit(cache=True)
def _piece_nbrs(n, R, v, out):
    """Neighbours of ``v`` along the cyclic boundary described by ``R``."""
    r = R.shape[0]
    for j in range(r):
        a = R[j, 0]
        b = R[j, 1]
        off = (v - a) % n
        L = run_len(n, a, b)
        if off < L:
            out[0] = (v - 1) % n if off > 0 else R[(j - 1) % r, 1]
            out[1] = (v + 1) % n if off < L - 1 else R[(j + 1) % r, 0]
            return 2
    return 0


@njit(cache=True)
def extreme_edge(X, Y, n, R, E, AP, AI, sg, v, rightward, ref):
    """Lowest incident edge of ``v`` that leaves to the right (or left).

    ``ref`` (or -1) restricts the choice to edges above the edge ``v-ref``.
    Returns the other endpoint or -1.
    """
    best = NONE
    nb = np.empty(2, dtype=np.int64)
    if E.shape[0] > 0:
        cnt = AP[v + 1] - AP[v]
    else:
        cnt = _piece_nbrs(n, R, v, nb)
    for i in range(cnt):
        x = AI[AP[v] + i] if E.shape[0] > 0 else nb[i]
        if x == ref:
            continue
        if rightward:
            if not lex_lt(X, Y, sg, v, x):
                continue
            if ref != NONE and orient(X, Y, v, ref, x) <= 0:
                continue
            if best == NONE or orient(X, Y, v, x, best) > 0:
                best = x
        else:
            if not lex_lt(X, Y, sg, x, v):
                continue
            if ref != NONE and orient(X, Y, v, ref, x) >= 0:
                continue
            if best == NONE or orient(X, Y, v, x, best) < 0:
                best = x
    return best


# --------------------------------------------------------------------------- translational sweeps


@njit(cache=True)
def _in_slab(X, Y, w, el, er, tl, tr):
    if el != NONE and orient(X, Y, el, er, w) <= 0:
        return False
    if tl != NONE and orient(X, Y, tl, tr, w) >= 0:
        return False
    return True


@njit(cache=True)
def sweep_right(X, Y, n, R, sg, v, el, er, tl, tr):
    """Lex-first vertex right of ``v`` between bottom ``el-er`` and top ``tl-tr``.

    The search stops at the nearer right endpoint of the two edges (endpoints
    themselves are candidates). ``-1`` for an edge means the cell is open on
    that side. Returns (vertex or -1, inspected).
    """
    bound = er
    if tl != NONE and (el == NONE or lex_lt(X, Y, sg, tr, er)):
        bound = tr
    best = bound
    seen = 0
    for j in range(R.shape[0]):
        a = R[j, 0]
        L = run_len(n, a, R[j, 1])
        seen += L
        for t in range(L):
            w = (a + t) % n
            if not lex_lt(X, Y, sg, v, w):
                continue
            if best != NONE and not lex_lt(X, Y, sg, w, best):
                continue
            if _in_slab(X, Y, w, el, er, tl, tr):
                best = w
    return best, seen


@njit(cache=True)
def sweep_left(X, Y, n, R, sg, v, el, er, tl, tr):
    """Mirror of :func:`sweep_right`: lex-last vertex left of ``v``."""
    bound = el
    if tl != NONE and (el == NONE or lex_lt(X, Y, sg, el, tl)):
        bound = tl
    best = bound
    seen = 0
    for j in range(R.shape[0]):
        a = R[j, 0]
        L = run_len(n, a, R[j, 1])
        seen += L
        for t in range(L):
            w = (a + t) % n
            if not lex_lt(X, Y, sg, w, v):
                continue
            if best != NONE and not lex_lt(X, Y, sg, best, w):
                continue
            if _in_slab(X, Y, w, el, er, tl, tr):
                best = w
    return best, seen


# --------------------------------------------------------------------------- angular sweeps


@njit(cache=True)
def fan_sweep(X, Y, n, R, pivot, da, db, end, turn, h1, h2, hs):
    """First vertex met by a ray rotating about ``pivot``.

    The ray starts in direction ``db - da`` (``pivot`` is one of the two) and
    turns counterclockwise when ``turn == 1``, clockwise when ``turn == -1``.
    Candidates must lie strictly past the start, not past the direction
    ``pivot -> end``, and in the closed half-plane where ``hs * orient(h1, h2, .)``
    is non-negative. Ties along one direction go to the nearer vertex.
    Returns (vertex or -1, inspected).
    """
    best = NONE
    seen = 0
    for j in range(R.shape[0]):
        a = R[j, 0]
        L = run_len(n, a, R[j, 1])
        seen += L
        for t in range(L):
            w = (a + t) % n
            if w == pivot:
                continue
            if turn * orient(X, Y, da, db, w) <= 0:
                continue
            if turn * orient(X, Y, pivot, end, w) > 0:
                continue
            if h1 != NONE and hs * orient(X, Y, h1, h2, w) < 0:
                continue
            if best == NONE:
                best = w
                continue
            o = turn * orient(X, Y, pivot, w, best)
            if o > 0 or (o == 0 and dist2(X, Y, pivot, w) < dist2(X, Y, pivot, best)):
                best = w
    return best, seen


# --------------------------------------------------------------------------- hull


@njit(cache=True)
def hull_next(X, Y, n, R, c):
    """Jarvis step: the vertex ``w`` with every other vertex left of ``c -> w``.

    Collinear ties pick the farther vertex. Returns (vertex, inspected).
    """
    best = NONE
    seen = 0
    for j in range(R.shape[0]):
        a = R[j, 0]
        L = run_len(n, a, R[j, 1])
        seen += L
        for t in range(L):
            w = (a + t) % n
            if w == c:
                continue
            if best == NONE:
                best = w
                continue
            o = orient(X, Y, c, best, w)
            if o < 0 or (o == 0 and dist2(X, Y, c, w) > dist2(X, Y, c, best)):
                best = w
    return best, seen


@njit(cache=True)
def lex_extreme(X, Y, n, R, sg):
    """Lex-smallest vertex of the set in frame ``sg``."""
    best = NONE
    for j in range(R.shape[0]):
        a = R[j, 0]
        L = run_len(n, a, R[j, 1])
        for t in range(L):
            w = (a + t) % n
            if best == NONE or lex_lt(X, Y, sg, w, best):
                best = w
    return best
