"""Command-line entry point: ``locc-lab {construct,certify,simulate,diagram,sweep}``.

Exit codes: 0 pass, 1 verdict failed, 2 bad parameters, 3 precondition
violated (e.g. a non-orthogonal input set or an invalid tree).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .certify import PreconditionError, certify_party
from .diagram import layout, render
from .families import FAMILIES, ParameterError, auto_family, build, check_params, expected_count, FamilyParams
from .protocol import Resource, TreeInvalidError, build_tree, run, theorem_for
from .states import StateSet, verify_orthogonality

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_PRECONDITION = 0, 1, 2, 3
THREADS_ENV = "LOCC_LAB_THREADS"


@dataclass
class RunManifest:
    command: str
    params: dict
    input: str | None = None
    output: str | None = None
    verdicts: dict = field(default_factory=dict)
    timing_s: float = 0.0
    version: str = __version__


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _family(args) -> str:
    return auto_family(args.n, args.m) if args.family == "auto" else args.family


def _load_states(args) -> StateSet:
    if getattr(args, "input", None):
        try:
            s = StateSet.from_json(Path(args.input).read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise CliError(EXIT_PRECONDITION, f"cannot read state set {args.input}: {exc}") from exc
    else:
        if args.n is None or args.m is None:
            raise CliError(EXIT_PARAMS, "give --n and --m, or --in PATH")
        s = build(args.n, args.m, args.family)
    drop = getattr(args, "drop", None) or []
    if drop:
        try:
            s = s.without(*drop)
        except KeyError as exc:
            raise CliError(EXIT_PARAMS, str(exc)) from exc
    return s


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _write_manifest(args, manifest: RunManifest) -> None:
    path = args.manifest or (f"{args.out}.manifest.json" if args.out else None)
    if path:
        Path(path).write_text(json.dumps(asdict(manifest), indent=2) + "\n")


def _params(args, s: StateSet | None = None) -> dict:
    if s is not None:
        return {"n": s.n, "m": s.m, "family": s.family}
    return {"n": args.n, "m": args.m, "family": _family(args)}


def cmd_construct(args) -> int:
    s = _load_states(args)
    bad = verify_orthogonality(s)
    _emit(s.to_json(indent=2), args.out)
    verdicts = {"count": len(s), "orthogonal": not bad}
    if s.family in FAMILIES:
        verdicts["expected_count"] = expected_count(FamilyParams(s.n, s.m), s.family)
    args._manifest.params = _params(args, s)
    args._manifest.verdicts = verdicts
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_certify(args) -> int:
    s = _load_states(args)
    parties = ("A", "B") if args.party == "both" else (args.party,)
    certs = [certify_party(s, p) for p in parties]
    ok = all(c.is_scalar_only for c in certs)
    doc = {"n": s.n, "m": s.m, "family": s.family, "scalar_only": ok,
           "certificates": [c.to_dict() for c in certs]}
    _emit(json.dumps(doc, indent=2), args.out)
    args._manifest.params = _params(args, s)
    args._manifest.verdicts = {c.party: c.is_scalar_only for c in certs}
    return EXIT_OK if ok else EXIT_FAIL


def cmd_simulate(args) -> int:
    s = _load_states(args)
    theorem = args.theorem or theorem_for(s.n, s.m)
    if theorem is None:
        raise CliError(EXIT_PARAMS, f"no protocol covers n={s.n}, m={s.m}; pass --theorem")
    resource = Resource.mes() if args.resource == "mes" else Resource.product()
    tree = build_tree(theorem, s.n, s.m)
    report = run(tree, s, resource)
    doc = {"n": s.n, "m": s.m, "family": s.family, "theorem": theorem, "resource": args.resource,
           "tree_notes": list(tree.notes), **report.to_dict()}
    _emit(json.dumps(doc, indent=2), args.out)
    if args.tree_out:
        Path(args.tree_out).write_text(json.dumps(tree.to_dict()) + "\n")
    args._manifest.params = {**_params(args, s), "theorem": theorem}
    args._manifest.verdicts = {"perfect": report.perfect}
    return EXIT_OK if report.perfect else EXIT_FAIL


def cmd_diagram(args) -> int:
    s = _load_states(args)
    d = layout(s)
    _emit(render(d, args.format), args.out)
    args._manifest.params = _params(args, s)
    args._manifest.verdicts = {"tiles": len(d.tiles), "stopper_omitted": d.stopper_omitted,
                               "disjoint": not d.overlaps()}
    return EXIT_OK


def sweep_cell(n: int, m: int, family: str = "auto", simulate: bool = True) -> dict:
    """construct + verify + certify (+ simulate) for one grid cell."""
    fam = auto_family(n, m) if family == "auto" else family
    row = {"n": n, "m": m, "family": fam}
    try:
        check_params(FamilyParams(n, m), fam)
    except ParameterError as exc:
        return {**row, "status": "skipped", "reason": str(exc)}
    t0 = time.perf_counter()
    s = build(n, m, fam)
    row["count"] = len(s)
    row["count_ok"] = len(s) == expected_count(FamilyParams(n, m), fam)
    row["orthogonal"] = not verify_orthogonality(s)
    dims = [certify_party(s, p).solution_dim for p in ("A", "B")]
    row["solution_dims"] = dims
    row["scalar_only"] = dims == [1, 1]
    theorem = theorem_for(n, m) if fam != "thm1_n4" else 4
    if simulate and theorem is not None:
        row["theorem"] = theorem
        row["perfect"] = run(build_tree(theorem, n, m, s), s).perfect
    checks = [row["count_ok"], row["orthogonal"], row["scalar_only"], row.get("perfect", True)]
    row["status"] = "pass" if all(checks) else "fail"
    row["seconds"] = round(time.perf_counter() - t0, 3)
    return row


def _range(text: str) -> list[int]:
    lo, _, hi = text.partition(":")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if hi else lo_i
    except ValueError as exc:
        raise CliError(EXIT_PARAMS, f"bad range {text!r}; use LO:HI") from exc
    return list(range(lo_i, hi_i + 1))


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise CliError(EXIT_PARAMS, f"{THREADS_ENV} must be an integer, got {raw!r}") from exc


def cmd_sweep(args) -> int:
    cells = sorted((n, m) for n in _range(args.n_range) for m in _range(args.m_range))
    jobs = [(n, m, args.family, not args.no_simulate) for n, m in cells]
    workers = _threads()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(sweep_cell, *zip(*jobs)))
    else:
        rows = [sweep_cell(*j) for j in jobs]
    if args.format == "json":
        _emit(json.dumps(rows, indent=2), args.out)
    else:
        lines = [f"{'n':>3} {'m':>3} {'family':<8} {'count':>5} {'orth':>5} {'dims':>6} {'perfect':>8}  status"]
        for r in rows:
            if r["status"] == "skipped":
                lines.append(f"{r['n']:>3} {r['m']:>3} {r['family']:<8} {'':>5} {'':>5} {'':>6} {'':>8}  skipped")
                continue
            perfect = "-" if "perfect" not in r else str(r["perfect"])
            dims = ",".join(map(str, r["solution_dims"]))
            lines.append(f"{r['n']:>3} {r['m']:>3} {r['family']:<8} {r['count']:>5} "
                         f"{str(r['orthogonal']):>5} {dims:>6} {perfect:>8}  {r['status']}")
        _emit("\n".join(lines), args.out)
    ran = [r for r in rows if r["status"] != "skipped"]
    args._manifest.params = {"n_range": args.n_range, "m_range": args.m_range, "family": args.family}
    args._manifest.verdicts = {"cells": len(rows), "skipped": len(rows) - len(ran),
                               "failed": [[r["n"], r["m"], r["family"]] for r in ran if r["status"] != "pass"]}
    return EXIT_OK if all(r["status"] == "pass" for r in ran) else EXIT_FAIL


def _add_common(p: argparse.ArgumentParser, params: bool = True) -> None:
    if params:
        p.add_argument("--n", type=int, help="dimension of Alice's system")
        p.add_argument("--m", type=int, help="dimension of Bob's system")
        p.add_argument("--in", dest="input", metavar="PATH", help="read a state-set JSON instead of building one")
        p.add_argument("--drop", action="append", metavar="LABEL", help="remove a state by label (repeatable)")
    p.add_argument("--family", choices=(*FAMILIES, "auto"), default="auto")
    p.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")
    p.add_argument("--manifest", metavar="PATH", help="run manifest path (default: OUT.manifest.json)")
    p.add_argument("--seedless", action="store_true", help="reserved; rejected (nothing here is random)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locc-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a state family and write it as JSON")
    _add_common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="local-indistinguishability certificates")
    _add_common(p)
    p.add_argument("--party", choices=("A", "B", "both"), default="both")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("simulate", help="run the MES-assisted discrimination protocol")
    _add_common(p)
    p.add_argument("--theorem", type=int, choices=(4, 5, 6))
    p.add_argument("--resource", choices=("mes", "product"), default="mes")
    p.add_argument("--tree-out", metavar="PATH", help="also write the protocol tree JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("diagram", help="render the tile diagram")
    _add_common(p)
    p.add_argument("--format", choices=("ascii", "svg", "json"), default="ascii")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("sweep", help="check every cell of an (n, m) grid")
    _add_common(p, params=False)
    p.add_argument("--n-range", default="4:10", metavar="LO:HI")
    p.add_argument("--m-range", default="4:10", metavar="LO:HI")
    p.add_argument("--format", choices=("ascii", "json"), default="ascii")
    p.add_argument("--no-simulate", action="store_true", help="skip the protocol runs")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.seedless:
        print("error: --seedless is reserved; no command uses randomness", file=sys.stderr)
        return EXIT_PARAMS
    args._manifest = RunManifest(args.command, {}, getattr(args, "input", None), args.out)
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except (PreconditionError, TreeInvalidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    args._manifest.timing_s = round(time.perf_counter() - t0, 4)
    _write_manifest(args, args._manifest)
    return code


if __name__ == "__main__":
    sys.exit(main())
