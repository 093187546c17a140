import json

import pytest

from main import main, parse_n_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_build_zigzag(capsys):
    code, out = run(capsys, "build", "zigzag", "--n", "4")
    assert code == 0
    dump = json.loads(out)
    assert dump["algebra"] == "C3"
    assert dump["dimension"] == 10
    assert sum(len(b["elements"]) for b in dump["blocks"]) == 10
    assert dump["schema_version"] == "1"


def test_build_range(capsys):
    code, out = run(capsys, "build", "an", "--n-range", "2..4")
    assert code == 0
    dims = [d["dimension"] for d in json.loads(out)["dumps"]]
    assert dims == [5, 9, 13]


def test_build_s(capsys):
    code, out = run(capsys, "build", "s", "--n", "3")
    assert code == 0
    assert json.loads(out)["dimension"] == 12


@pytest.mark.parametrize("argv", [
    ["build", "zigzag", "--n", "1"],
    ["build", "zigzag"],
    ["build", "zigzag", "--n", "3", "--n-range", "2..3"],
    ["build", "nothing", "--n", "3"],
    ["verify", "nosuch", "--n", "3"],
    ["verify", "burau", "--suite", "algebra", "--n", "3"],
    ["verify", "burau", "--n", "3", "--max-arity", "2"],
    ["transfer", "--n", "3", "--max-arity", "9"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_verify_passes(capsys):
    code, out = run(capsys, "verify", "burau", "--n", "3")
    assert code == 0
    dump = json.loads(out)
    assert dump["suites"] == ["burau"]
    assert dump["reports"][0]["suite"] == "burau"


def test_verify_perturbed_fails(capsys):
    code, out = run(capsys, "verify", "--suite", "burau", "--n", "3", "--perturb")
    assert code == 1
    statuses = [c["status"] for c in json.loads(out)["reports"][0]["checks"]]
    assert "fail" in statuses


def test_verify_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out = run(capsys, "verify", "algebra", "--n-range", "2..3", "--out", str(target))
    assert code == 0
    assert out == ""
    dump = json.loads(target.read_text())
    assert dump["n_values"] == [2, 3]
    assert len(dump["reports"]) == 2


def test_transfer_dump(capsys):
    code, out = run(capsys, "transfer", "--n", "3", "--max-arity", "4")
    assert code == 0
    dump = json.loads(out)
    assert dump["layers"]["3"] == 3
    assert dump["layers"]["4"] == 0
    m3 = [e for e in dump["entries"] if e["arity"] == 3]
    assert [1, 2] in [inp for e in m3 for inp in e["inputs"]]


def test_parse_n_range():
    assert parse_n_range("4") == [4]
    assert parse_n_range("2..5") == [2, 3, 4, 5]
    assert parse_n_range("3-4") == [3, 4]
    with pytest.raises(ValueError):
        parse_n_range("two")
