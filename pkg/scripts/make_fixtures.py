"""Write the fixture polygons used by the bench and the README examples.

    python3 scripts/make_fixtures.py [--out scripts/data]
"""
import argparse
from pathlib import Path

from memgeo.generators import L6, SQUARE, comb_polygon, spiral_polygon


def write_poly(path: Path, pts) -> None:
    path.write_text(f"{len(pts)}\n" + "".join(f"{x} {y}\n" for x, y in pts))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).parent / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_poly(out / "l6.poly", L6)
    write_poly(out / "sq.poly", SQUARE)
    write_poly(out / "comb16.poly", comb_polygon(16))
    # corridor fixtures for the tradeoff bench, one per vertex count
    for n in (64, 256, 1024):
        write_poly(out / f"spiral{n}.poly", spiral_polygon(n // 2))
    print(f"wrote fixtures to {out}")


if __name__ == "__main__":
    main()
