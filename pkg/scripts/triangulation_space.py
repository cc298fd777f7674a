"""Workspace and sweep counts of the constant-space triangulation as n grows.

    python3 scripts/triangulation_space.py --n 16 64 256 1024
"""
import argparse
import random
import time
from dataclasses import dataclass, field

from memgeo.generators import random_pslg, star_polygon
from memgeo.oracle import check_triangulation
from memgeo.scene import Constant, build_scene, metered
from memgeo.triangulate import triangulate_pslg


@dataclass
class SpaceConfig:
    sizes: list[int] = field(default_factory=lambda: [16, 64, 256, 1024])
    seed: int = 3
    check: bool = False  # run the exact validity checker too (slow for large n)


def measure(scene, check: bool) -> dict:
    tris: list = []
    t0 = time.monotonic()
    with metered(Constant()) as m:
        summary = triangulate_pslg(scene, tris.append)
    row = {"n": scene.n, "triangles": summary.triangles, "mountains": summary.mountains,
           "sweeps": summary.sweeps, "peak_words": m.peak_words,
           "seconds": round(time.monotonic() - t0, 3)}
    if check:
        row["valid"] = check_triangulation(scene, tris).ok
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[16, 64, 256, 1024])
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--pslg", action="store_true", help="random PSLGs instead of polygons")
    args = ap.parse_args()
    cfg = SpaceConfig(args.n, check=args.check)
    for n in cfg.sizes:
        rng = random.Random(cfg.seed)
        sc = random_pslg(n, rng) if args.pslg else build_scene(star_polygon(n, rng))
        print(measure(sc, cfg.check))


if __name__ == "__main__":
    main()
