import json
import subprocess
import sys

import pytest

from locc_lab.certify import certify_party
from locc_lab.cli import main, sweep_cell
from locc_lab.families import build
from locc_lab.states import StateSet


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_construct(capsys):
    code, out = run_cli(capsys, "construct", "--n", "6", "--m", "4")
    assert code == 0
    assert len(json.loads(out.out)["states"]) == 11


def test_construct_97(capsys):
    code, out = run_cli(capsys, "construct", "--n", "9", "--m", "7")
    assert code == 0 and len(json.loads(out.out)["states"]) == 25


def test_construct_bad_params(capsys):
    code, out = run_cli(capsys, "construct", "--n", "3", "--m", "4")
    assert code == 2
    assert "n > m = 4" in out.err


def test_manifest_written(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, _ = run_cli(capsys, "construct", "--n", "6", "--m", "4", "--out", str(out))
    assert code == 0
    man = json.loads((tmp_path / "s.json.manifest.json").read_text())
    assert man["command"] == "construct"
    assert man["params"] == {"n": 6, "m": 4, "family": "thm1"}
    assert man["verdicts"]["count"] == man["verdicts"]["expected_count"] == 11


def test_certify_round_trip(tmp_path, capsys):
    path = tmp_path / "s.json"
    run_cli(capsys, "construct", "--n", "7", "--m", "6", "--out", str(path))
    code, out = run_cli(capsys, "certify", "--in", str(path))
    assert code == 0
    doc = json.loads(out.out)
    s = StateSet.from_json(path.read_text())
    assert [c["solution_dim"] for c in doc["certificates"]] == [
        certify_party(s, p).solution_dim for p in "AB"]
    assert s == build(7, 6)


def test_certify_without_stopper(capsys):
    code, out = run_cli(capsys, "certify", "--n", "6", "--m", "4", "--drop", "phi", "--party", "A")
    assert code == 1
    assert json.loads(out.out)["certificates"][0]["witness"] is not None


def test_certify_non_orthogonal(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "m": 2, "family": "custom", "states": [
        {"label": "x", "a": [[1, 1]], "b": [[1, 1]]},
        {"label": "y", "a": [[1, 1]], "b": [[1, 1], [2, 1]]},
    ]}))
    code, _ = run_cli(capsys, "certify", "--in", str(path))
    assert code == 3


@pytest.mark.parametrize("argv,count", [
    (["--n", "6", "--m", "4", "--theorem", "4"], 11),
    (["--n", "7", "--m", "6", "--theorem", "5"], 18),
    (["--n", "5", "--m", "5", "--theorem", "6"], 9),
])
def test_simulate(capsys, argv, count):
    code, out = run_cli(capsys, "simulate", *argv)
    doc = json.loads(out.out)
    assert code == 0 and doc["perfect"]
    assert len(doc["states"]) == count
    assert {st["p_correct"] for st in doc["states"]} == {"1"}


def test_simulate_product_resource_fails(capsys):
    code, _ = run_cli(capsys, "simulate", "--n", "6", "--m", "4", "--resource", "product")
    assert code == 1


def test_simulate_writes_tree(tmp_path, capsys):
    path = tmp_path / "tree.json"
    run_cli(capsys, "simulate", "--n", "5", "--m", "4", "--tree-out", str(path))
    assert json.loads(path.read_text())["root"]["party"] == "A"


def test_diagram_ascii(capsys):
    code, out = run_cli(capsys, "diagram", "--n", "6", "--m", "4", "--format", "ascii")
    assert code == 0 and "(split)" in out.out


def test_diagram_svg(capsys):
    code, out = run_cli(capsys, "diagram", "--n", "7", "--m", "6", "--format", "svg")
    assert code == 0 and out.out.startswith("<svg")


def test_diagram_97(capsys):
    code, out = run_cli(capsys, "diagram", "--n", "9", "--m", "7", "--format", "json")
    assert code == 0 and len(json.loads(out.out)["tiles"]) == 24


def test_seedless_rejected(capsys):
    code, out = run_cli(capsys, "construct", "--n", "6", "--m", "4", "--seedless")
    assert code == 2 and "reserved" in out.err


def test_unknown_family_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--n", "6", "--m", "4", "--family", "nope"])
    assert exc.value.code == 2


def test_sweep_single_cell(capsys):
    code, out = run_cli(capsys, "sweep", "--n-range", "6:6", "--m-range", "4:4", "--format", "json")
    rows = json.loads(out.out)
    assert code == 0 and len(rows) == 1 and rows[0]["family"] == "thm1" and rows[0]["perfect"]


def test_sweep_55_row():
    row = sweep_cell(5, 5)
    assert row["family"] == "thm3"
    assert row["solution_dims"] == [2, 2] and row["status"] == "fail"


def test_sweep_skips_invalid(capsys):
    code, out = run_cli(capsys, "sweep", "--n-range", "4:6", "--m-range", "4:6",
                        "--no-simulate", "--format", "json")
    rows = json.loads(out.out)
    assert [(r["n"], r["m"]) for r in rows] == sorted((r["n"], r["m"]) for r in rows)
    skipped = {(r["n"], r["m"]) for r in rows if r["status"] == "skipped"}
    assert skipped == {(4, 5), (4, 6), (5, 6)}
    assert code == 1  # (5, 5) fails its certificate


def test_sweep_parallel_matches_serial(monkeypatch, capsys):
    argv = ["sweep", "--n-range", "4:6", "--m-range", "4:4", "--format", "json"]
    _, serial = run_cli(capsys, *argv)
    monkeypatch.setenv("LOCC_LAB_THREADS", "2")
    _, parallel = run_cli(capsys, *argv)
    strip = lambda rows: [{k: v for k, v in r.items() if k != "seconds"} for r in rows]  # noqa: E731
    assert strip(json.loads(serial.out)) == strip(json.loads(parallel.out))


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "locc_lab", "construct", "--n", "5", "--m", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["n"] == 5
