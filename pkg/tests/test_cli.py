from __future__ import annotations

import json
import subprocess
import sys

import pytest

from expcodim.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_ec_examples(capsys):
    assert run_json(capsys, "ec", "examples/square.json") == (0, {
        "n": 8, "k": 3, "family": "canonical", "ec": 4,
        "reported_codim": {"name": "square", "codim": 4, "source": "published", "equals_ec": True},
    })
    code, rep = run_json(capsys, "ec", "examples/pappus.json")
    assert code == 0 and rep["ec"] == 9
    assert rep["note"] == "published codim: 8, ec != codim"
    code, rep = run_json(capsys, "ec", "examples/uniform_2_4.json")
    assert rep["ec"] == 0


def test_ec_families(capsys, tmp_path):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps({"sets": [[], [1, 2, 3], [3, 4, 5], [5, 6, 7], [7, 8, 1], [1, 2, 3, 4, 5, 6, 7, 8]]}))
    code, rep = run_json(capsys, "ec", "square.json", "--family", "powerset", "--family", "flacets",
                         "--family", f"file:{fam}")
    assert code == 0
    assert rep["ec_by_family"] == {"powerset": 4, "flacets": 4, f"file:{fam}": 4}
    assert rep["all_equal"] is True
    code, _, err = run(capsys, "ec", "square.json", "--family", "bogus")
    assert code == 2 and "unknown family" in err


def test_text_rendering(capsys):
    code, out, _ = run(capsys, "ec", "square.json")
    assert code == 0 and "ec: 4" in out.splitlines()


def test_analyze(capsys):
    code, rep = run_json(capsys, "analyze", "examples/square.json")
    assert code == 0
    assert rep["is_positroid"] and rep["length"] == rep["ec"] == 4
    assert rep["s_poly"]["ec_from_s"] == 4
    code, rep = run_json(capsys, "analyze", "pappus")
    assert rep["is_positroid"] is False and "affine_permutation" not in rep
    assert rep["reported_codim"]["equals_ec"] is False


def test_positroid_commands(capsys):
    code, rep = run_json(capsys, "positroid", "perm", "3,6,5,8,7,10")
    assert code == 0 and rep["length"] == 3 and rep["ec"] == 3
    assert rep["essential_set"] == [
        {"interval": [1, 3], "rank": 2}, {"interval": [3, 5], "rank": 2}, {"interval": [5, 7], "rank": 2},
    ]
    code, rep = run_json(capsys, "positroid", "perm", "1")
    assert code == 0 and rep["length"] == 0
    code, rep = run_json(capsys, "positroid", "perm", "example46.json")
    assert rep["permutation"]["window"] == [3, 6, 5, 8, 7, 10]
    code, rep = run_json(capsys, "positroid", "ranks", "example46_ranks.json")
    assert code == 0 and rep["permutation"]["window"] == [3, 6, 5, 8, 7, 10]
    code, rep = run_json(capsys, "positroid", "verify", "--n", "5")
    assert code == 0 and rep["message"] == "all 414 permutations: ec == length"
    code, _, err = run(capsys, "positroid", "perm", "2,1")
    assert code == 2


def test_spoly_and_tutte(capsys):
    code, rep = run_json(capsys, "spoly", "examples/loop.json")
    assert code == 0
    assert {(t["x"], t["y"], t["z"]) for t in rep["terms"]} == {(0, 0, 0), (1, 0, 0), (0, 0, 1)}
    code, rep = run_json(capsys, "spoly", "examples/square.json", "--check-ec")
    assert code == 0 and rep["check_ec"]["equal"]
    code, rep = run_json(capsys, "tutte", "examples/uniform_1_2.json", "--eval", "1,1")
    assert code == 0 and rep["value"] == 2
    code, rep = run_json(capsys, "tutte", "coloop.json", "--convention", "standard")
    assert rep["terms"] == [{"x": 1, "y": 0, "coeff": 1}]


@pytest.mark.parametrize("suite,extra", [
    ("positroids", ["--n", "5"]),
    ("valuation", ["--witness", "examples/delta24_split.json"]),
    ("flacets", ["--n", "6"]),
    ("axioms", ["--n", "4"]),
    ("duality", ["--n", "4", "--samples", "20"]),
    ("identities", ["--samples", "50"]),
    ("svals", ["--n", "5", "--samples", "10"]),
])
def test_verify_suites(capsys, suite, extra):
    code, rep = run_json(capsys, "verify", suite, *extra)
    assert code == 0 and rep["passed"] and rep["failures"] == 0


def test_exit_codes(capsys, tmp_path):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{")
    assert run(capsys, "ec", str(bad_json))[0] == 2
    assert run(capsys, "ec", "does/not/exist.json")[0] == 2
    axiom = tmp_path / "axiom.json"
    axiom.write_text(json.dumps({"n": 2, "format": "rank_table", "data": [0, 1, 0, 2]}))
    code, _, err = run(capsys, "ec", str(axiom))
    assert code == 3 and "unit-increase" in err
    broken = tmp_path / "witness.json"
    broken.write_text(json.dumps({
        "parent": {"n": 4, "format": "bases", "data": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]},
        "internal_faces": [{"matroid": {"n": 4, "format": "bases", "data": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]]}, "dim": 3}],
    }))
    assert run(capsys, "verify", "valuation", "--witness", str(broken))[0] == 1


def test_output_is_deterministic(capsys):
    first = run(capsys, "analyze", "square.json", "--json")[1]
    second = run(capsys, "analyze", "square.json", "--json")[1]
    assert first == second


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "expcodim", "ec", "square.json", "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["ec"] == 4
