"""Write the three tile diagrams (C^6xC^4, C^7xC^6, C^9xC^7) as SVG and ASCII."""

import argparse
from pathlib import Path

from locc_lab.diagram import layout, render
from locc_lab.families import build

FIGURES = [(6, 4), (7, 6), (9, 7)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures", help="output directory")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n, m in FIGURES:
        d = layout(build(n, m))
        for fmt, ext in (("svg", "svg"), ("ascii", "txt")):
            (out / f"tiles_{n}x{m}.{ext}").write_text(render(d, fmt))
        print(f"{n}x{m}: {len(d.tiles)} tiles, split: {[t.label for t in d.non_contiguous()]}")


if __name__ == "__main__":
    main()
