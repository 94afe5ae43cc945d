from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from arithgraph.cache import CACHE_ENV
from arithgraph.cli import main
from arithgraph.critical import CriticalGroup
from arithgraph.enumeration import StructureSet


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.delenv(CACHE_ENV, raising=False)


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "cycle", "--n", "3", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == 10 and obj["complete"]
    assert len(StructureSet.from_json(obj)) == 10


def test_enumerate_csv_matches_json(capsys):
    _, js, _ = run(capsys, "enumerate", "--family", "star", "--n", "3", "--format", "json")
    _, cs, _ = run(capsys, "enumerate", "--family", "star", "--n", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(cs)))
    assert rows[0][:4] == ["d0", "d1", "d2", "d3"] and rows[0][-1] == "group"
    from_csv = sorted((tuple(map(int, r[:4])), tuple(map(int, r[4:8]))) for r in rows[1:])
    from_json = sorted((tuple(p["d"]), tuple(p["r"])) for p in json.loads(js)["structures"])
    assert from_csv == from_json
    for r in rows[1:]:
        CriticalGroup.parse(r[-1])


def test_workers_give_identical_bytes(capsys):
    _, a, _ = run(capsys, "enumerate", "--family", "cycle", "--n", "4", "--format", "json",
                  "--workers", "1")
    _, b, _ = run(capsys, "enumerate", "--family", "cycle", "--n", "4", "--format", "json",
                  "--workers", "4")
    assert a == b


def test_cache_flag(tmp_path, capsys):
    args = ["enumerate", "--family", "cycle", "--n", "3", "--format", "json",
            "--cache-dir", str(tmp_path)]
    _, first, _ = run(capsys, *args)
    assert list(tmp_path.iterdir())
    _, second, _ = run(capsys, *args)
    assert first == second


def test_critgroup_and_verify(capsys):
    assert run(capsys, "critgroup", "--family", "cycle", "--n", "3", "--d", "2,2,2")[1] == "Z_3\n"
    code, out, _ = run(capsys, "critgroup", "--family", "cycle", "--n", "3", "--d", "2,2,2",
                       "--format", "json")
    assert json.loads(out) == {"factors": [3]}
    code, out, _ = run(capsys, "verify", "--family", "fan", "--n", "2", "--r", "1,2,3,2,1")
    assert code == 0 and "d=(8,2,1,1,3)" in out
    code, out, err = run(capsys, "verify", "--family", "cycle", "--n", "3", "--r", "1,1,3")
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "invalid-input"
    assert len(err.strip().splitlines()) == 1
    code, _, _ = run(capsys, "verify", "--family", "cycle", "--n", "3", "--d", "5,2,1",
                     "--r", "1,2,3")
    assert code == 0


def test_conversions(capsys):
    assert run(capsys, "dfromr", "--family", "fan", "--n", "2", "--r", "1,2,3,2,3")[1] == \
        "(10,2,1,2,1)\n"
    assert run(capsys, "rfromd", "--family", "cycle", "--n", "3", "--d", "3,3,1")[1] == "(1,1,2)\n"
    assert run(capsys, "rfromd", "--family", "cycle", "--n", "3", "--d", "9,9,9")[0] == 1


def test_snf(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("3 3\n2 -1 -1\n-1 2 -1\n-1 -1 2\n")
    assert run(capsys, "snf", "--matrix", str(f))[1] == "1 3 0\n"
    obj = json.loads(run(capsys, "snf", "--matrix", str(f), "--format", "json")[1])
    assert obj["diag"] == [1, 3, 0] and len(obj["left"]) == 3
    f.write_text("2 2\n1 2\n3")
    assert run(capsys, "snf", "--matrix", str(f))[0] == 1


def test_transforms(capsys):
    out = run(capsys, "transform", "complete-to-star", "--family", "complete", "--n", "3",
              "--d", "5,2,1", "--format", "json")[1]
    assert json.loads(out) == {"d": [1, 6, 3, 2], "r": [6, 1, 2, 3]}
    out = run(capsys, "transform", "algo2", "--family", "fan", "--n", "2", "--r", "1,2,3,2,3")[1]
    assert "r=(1,2,3,2,3,6,6)" in out
    out = run(capsys, "transform", "algo1", "--n", "3", "--r0", "1,2,3,3,2,2,1,0,0,0",
              "--order", "7,8,9", "--format", "json")[1]
    assert json.loads(out)["r"] == [1, 2, 3, 3, 2, 2, 1, 5, 5, 3]
    out = run(capsys, "transform", "add-arm", "--family", "fan", "--n", "2",
              "--r", "1,2,3,3,2", "--arm", "1,1,2")[1]
    assert "r=(1,2,3,3,2,1,2)" in out
    out = run(capsys, "transform", "extend-fan", "--family", "fan", "--n", "2",
              "--r", "1,2,3,3,2", "--k", "1")[1]
    assert out.startswith("d=(15,2,1,1,2,2,1)")
    out = run(capsys, "transform", "smooth-arm", "--family", "fan", "--n", "2",
              "--r", "1,1,1,1,1", "--k", "2")[1]
    assert "r=(1,1,1)" in out
    out = run(capsys, "transform", "pendant", "--family", "star", "--n", "2",
              "--d", "1,2,2", "--vertex", "0")[1]
    assert out.startswith("d=(2,2,2,1) r=(2,1,1,2)")
    out = run(capsys, "transform", "clique-star", "--family", "complete", "--n", "3",
              "--d", "2,2,2", "--clique", "0,1,2")[1]
    assert out.startswith("d=(3,3,3,1) r=(1,1,1,3)")
    out = run(capsys, "transform", "subdivide-edge", "--family", "cycle", "--n", "3",
              "--d", "2,2,2", "--edge", "0,1")[1]
    assert "r=(1,1,1,2)" in out
    code, _, err = run(capsys, "transform", "add-arm", "--family", "fan", "--n", "2",
                       "--r", "1,2,3,3,2", "--arm", "2,1,1")
    assert code == 1 and json.loads(err)["error"] == "precondition"


def test_orbit_glue_bound(capsys):
    out = run(capsys, "orbit", "--n", "2", "--r", "1,3,2,2,3")[1].splitlines()
    assert out[0] == "(1,2,3,2,3)" and len(out) == 4
    out = run(capsys, "glue", "--arms", "1,2,3;1,3,2")[1]
    assert out.startswith("d=(10,2,1,1,2) r=(1,2,3,3,2)")
    obj = json.loads(run(capsys, "bound-check", "--n", "2", "--format", "json")[1])
    assert obj["tuples"] == 100 and obj["all_valid"]


def test_count_and_output_file(tmp_path, capsys):
    assert run(capsys, "count", "--family", "star", "--n", "3")[1] == "14\n"
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "enumerate", "--family", "path", "--n", "4", "--format", "json",
                       "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["count"] == 5


def test_partial_result_exit(capsys):
    code, out, err = run(capsys, "enumerate", "--family", "star", "--n", "4", "--max-nodes", "20",
                         "--format", "json")
    assert code == 1
    assert json.loads(err)["error"] == "partial-result"
    assert json.loads(out)["complete"] is False


def test_usage_errors(capsys):
    for argv in (["bogus"], ["verify", "--family", "cycle", "--n", "3", "--r", "1,x"], []):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
    assert run(capsys, "verify", "--r", "1,1,1")[0] == 1


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "arithgraph.cli", "critgroup", "--family",
                           "cycle", "--n", "3", "--d", "3,3,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "Z_2\n"
