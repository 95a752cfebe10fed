"""Build and simulate every protocol tree; print size, depth, timing and builder notes."""

import argparse
import json
import time

from locc_lab.families import build
from locc_lab.protocol import Resource, build_tree, run

CASES = [
    (4, 4, 4), (4, 5, 4), (4, 6, 4), (4, 8, 4),
    (5, 6, 6), (5, 7, 6), (5, 8, 6), (5, 8, 8),
    (6, 5, 5), (6, 7, 5), (6, 7, 7), (6, 9, 7),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="one JSON object per line")
    ap.add_argument("--product", action="store_true", help="use the product ancilla |11> instead of the MES")
    args = ap.parse_args()
    resource = Resource.product() if args.product else Resource.mes()
    for th, n, m in CASES:
        t0 = time.perf_counter()
        tree = build_tree(th, n, m)
        r = run(tree, build(n, m), resource)
        row = {
            "theorem": th, "n": n, "m": m, "perfect": r.perfect,
            "nodes": sum(1 for _ in tree.nodes()), "depth": tree.depth(),
            "searched_nodes": sum(1 for x in tree.nodes() if x.origin == "search"),
            "seconds": round(time.perf_counter() - t0, 2), "notes": list(tree.notes),
        }
        if args.json:
            print(json.dumps(row))
        else:
            print(f"thm{th} ({n},{m}): perfect={row['perfect']} nodes={row['nodes']} "
                  f"depth={row['depth']} searched={row['searched_nodes']} {row['seconds']}s")
            for note in row["notes"]:
                print(f"    {note}")


if __name__ == "__main__":
    main()
