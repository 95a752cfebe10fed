"""Grid sweep (construct, verify, certify, simulate) written to a JSON file.

Thin wrapper around ``locc-lab sweep``; LOCC_LAB_THREADS sets the worker count.
"""

import argparse
import sys

from locc_lab.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--out", default="sweep.json")
    ap.add_argument("--no-simulate", action="store_true")
    args = ap.parse_args()
    argv = ["sweep", "--n-range", f"4:{args.n_max}", "--m-range", f"4:{args.n_max}",
            "--format", "json", "--out", args.out]
    if args.no_simulate:
        argv.append("--no-simulate")
    code = cli_main(argv)
    print(f"wrote {args.out} (exit {code})")
    return code


if __name__ == "__main__":
    sys.exit(main())
