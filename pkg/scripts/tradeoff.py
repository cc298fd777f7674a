"""Time-space tradeoff of the shortest-path query on the corridor fixture.

Counts are deterministic, so the table is the same on every machine; only
the two timing columns vary.

    python3 scripts/tradeoff.py --n 1024 --s 1 4 16 64 256 --csv tradeoff.csv
"""
import argparse
import csv
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from memgeo.cli import bench_cell
from memgeo.generators import interior_point, spiral_polygon
from memgeo.scene import build_scene


@dataclass
class TradeoffConfig:
    n: int = 1024
    s_values: list[int] = field(default_factory=lambda: [1, 4, 16, 64, 256])
    repeats: int = 1
    seed: int = 0


def run(cfg: TradeoffConfig) -> list[dict]:
    m = cfg.n // 2
    pts = spiral_polygon(m, seed=cfg.seed)
    sc = build_scene(pts)
    # the two ends of the corridor
    p, q = interior_point(pts, cfg.n - 1), interior_point(pts, m - 1)
    return [bench_cell(sc, s, p, q, cfg.repeats) for s in cfg.s_values if s <= cfg.n]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1024)
    ap.add_argument("--s", type=int, nargs="+", default=[1, 4, 16, 64, 256])
    ap.add_argument("--repeats", type=int, default=1)
    ap.add_argument("--csv", help="also write the rows here")
    args = ap.parse_args()
    cfg = TradeoffConfig(args.n, args.s, args.repeats)
    rows = run(cfg)
    print(f"config: {asdict(cfg)}")
    print(f"{'s':>5} {'scans':>10} {'ray_shots':>10} {'peak_words':>11} {'query_ms':>9}")
    for r in rows:
        print(f"{r['s']:>5} {r['scans']:>10} {r['ray_shots']:>10} {r['peak_words']:>11} "
              f"{r['query_ns'] / 1e6:>9.1f}")
    ss = [r["s"] for r in rows]
    if len(ss) > 1:
        slope = np.polyfit(ss, [r["peak_words"] for r in rows], 1)[0]
        print(f"peak words grow by {slope:.1f} per unit of s; "
              f"scans(s={ss[0]}) / scans(s={ss[-1]}) = {rows[0]['scans'] / rows[-1]['scans']:.1f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
        print(f"rows written to {args.csv}", file=sys.stderr)


if __name__ == "__main__":
    main()
