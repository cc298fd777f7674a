"""Command-line front end.

Subcommands: ``triangulate``, ``decompose``, ``query``, ``validate`` and
``bench``. Parse and geometry errors exit with status 2, a blown workspace
budget with status 3.
"""
from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from memgeo.geodesic import Decomposition, build_decomposition, query
from memgeo.scene import (POLYGON, Constant, GeomError, LinearInS, ParseError, Scene,
                          WorkspaceExceeded,
                          load_file, metered, validate_general_position)
from memgeo.triangulate import triangulate_pslg

FORMATS = ("poly-text", "pslg-json")


# --------------------------------------------------------------------------- output helpers


def _fmt_coord(c) -> str:
    if isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1):
        return str(int(c))
    return format(float(c), ".15g")


def render_svg(scene: Scene, triangles: Sequence[tuple]) -> str:
    """SVG 1.1 drawing: one ``polygon`` per triangle, the input as one ``path``."""
    xs, ys = scene.xs, scene.ys
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w, h = max(x1 - x0, 1), max(y1 - y0, 1)
    mx, my = 0.05 * w, 0.05 * h
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'viewBox="{x0 - mx:g} {-(y1 + my):g} {w + 2 * mx:g} {h + 2 * my:g}">',
           f'<g transform="scale(1,-1)" stroke-width="{max(w, h) / 500:g}">']
    for t in triangles:
        pts = " ".join(f"{xs[v]},{ys[v]}" for v in t)
        out.append(f'<polygon points="{pts}" fill="#dde8f5" stroke="#4a6fa5"/>')
    if scene.kind == POLYGON:
        d = "M " + " L ".join(f"{xs[v]},{ys[v]}" for v in range(scene.n)) + " Z"
    else:
        d = " ".join(f"M {xs[a]},{ys[a]} L {xs[b]},{ys[b]}" for a, b in scene.edges)
    out.append(f'<path d="{d}" fill="none" stroke="#111"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def _parse_point(text: str):
    try:
        parts = [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {text!r}") from exc
    if len(parts) != 2:
        raise ParseError(f"bad point {text!r}: expected x,y")
    return tuple(int(c) if c.denominator == 1 else c for c in parts)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseError(f"bad integer list {text!r}") from exc


# --------------------------------------------------------------------------- subcommands


def cmd_triangulate(args) -> int:
    scene = load_file(args.input, args.format)
    tris: list = []

    def sink(t):
        print(*t)
        if args.svg:
            tris.append(t)

    with metered(Constant()) as m:
        summary = triangulate_pslg(scene, sink)
    if args.svg:
        Path(args.svg).write_text(render_svg(scene, tris))
    if args.meter:
        print(f"peak_words={m.peak_words} sweeps={summary.sweeps}", file=sys.stderr)
    return 0


def cmd_decompose(args) -> int:
    scene = load_file(args.input, args.format)
    with metered(LinearInS(args.s)):
        d = build_decomposition(scene, args.s)
    print(f"s={d.s} t={d.t} pieces={len(d.pieces)} chords={len(d.chords)}")
    for c in d.chords:
        print(f"chord {c.u} {c.v}")
    for i, p in enumerate(d.pieces):
        print(f"piece {i} size {p.size}")
    if args.dump:
        Path(args.dump).write_text(d.dumps())
    return 0


def cmd_query(args) -> int:
    scene = load_file(args.input, args.format)
    p, q = _parse_point(args.src), _parse_point(args.dst)
    with metered(LinearInS(args.s)):
        d = build_decomposition(scene, args.s)

    def sink(x):
        print(_fmt_coord(x[0]), _fmt_coord(x[1]))

    r = query(d, p, q, sink)
    print(f"length≈{r.length:.6f}")
    print(f"vertices={r.vertices} ray_shots={r.ray_shots} scans={r.scans} "
          f"peak_words={r.peak_words}")
    return 0


def cmd_validate(args) -> int:
    scene = load_file(args.input, args.format)
    report = validate_general_position(scene)
    for line in report.notes:
        print(line)
    print("general position: " + ("ok" if report.ok else "violated"))
    return 0 if report.ok else 1


def bench_cell(scene: Scene, s: int, p, q, repeats: int = 5) -> dict:
    """Median timings and the query counters for one (polygon, s) pair."""
    pre, qry = [], []
    last = None
    d: Optional[Decomposition] = None
    for _ in range(repeats):
        t0 = time.monotonic_ns()
        with metered(LinearInS(s)):
            d = build_decomposition(scene, s)
        t1 = time.monotonic_ns()
        last = query(d, p, q, lambda x: None)
        t2 = time.monotonic_ns()
        pre.append(t1 - t0)
        qry.append(t2 - t1)
    return {"n": scene.n, "s": s, "preprocess_ns": int(statistics.median(pre)),
            "query_ns": int(statistics.median(qry)), "peak_words": last.peak_words,
            "ray_shots": last.ray_shots, "scans": last.scans}


def cmd_bench(args) -> int:
    from memgeo.generators import interior_point

    scenes: dict[int, Scene] = {}
    for path in sorted(Path(args.input_dir).glob("*")):
        if path.suffix not in (".poly", ".txt", ".json"):
            continue
        sc = load_file(str(path))
        scenes.setdefault(sc.n, sc)
    rows = []
    for n in _int_list(args.n_list):
        if n not in scenes:
            raise ParseError(f"no polygon with {n} vertices in {args.input_dir}")
        sc = scenes[n]
        pts = sc.points()
        p, q = interior_point(pts, 0), interior_point(pts, n // 2)
        for s in _int_list(args.s_list):
            if 1 <= s <= n:
                rows.append(bench_cell(sc, s, p, q, args.repeats))
    fields = ["n", "s", "preprocess_ns", "query_ns", "peak_words", "ray_shots", "scans"]
    out = open(args.csv, "w", newline="") if args.csv != "-" else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=fields, lineterminator="\r\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# --------------------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="memgeo", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--input", required=True, help="scene file")
        if fmt:
            p.add_argument("--format", choices=FORMATS, default=None,
                           help="input format (default: by extension)")

    p = sub.add_parser("triangulate", help="stream a triangulation of the convex hull")
    common(p)
    p.add_argument("--svg", help="also write an SVG drawing here")
    p.add_argument("--meter", action="store_true", help="report workspace on stderr")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("decompose", help="balanced-cut decomposition of a polygon")
    common(p)
    p.add_argument("--s", type=int, required=True, help="space parameter")
    p.add_argument("--dump", help="write the serialized decomposition here")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("query", help="shortest path between two interior points")
    common(p)
    p.add_argument("--s", type=int, required=True, help="space parameter")
    p.add_argument("--from", dest="src", required=True, help='source "x,y"')
    p.add_argument("--to", dest="dst", required=True, help='target "x,y"')
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("validate", help="general-position report")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="time-space tradeoff CSV")
    p.add_argument("--input-dir", required=True, help="directory of polygon files")
    p.add_argument("--n-list", required=True, help="vertex counts, e.g. 256,1024")
    p.add_argument("--s-list", required=True, help="space parameters, e.g. 1,16,256")
    p.add_argument("--csv", default="-", help="output file (default: stdout)")
    p.add_argument("--repeats", type=int, default=5, help="runs per cell (median)")
    p.set_defaults(func=cmd_bench)
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI; returns the exit status."""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WorkspaceExceeded as exc:
        print(f"error: workspace exceeded: {exc}", file=sys.stderr)
        return 3
    except (GeomError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
