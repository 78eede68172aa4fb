import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from cherednik_howe import cli
from cherednik_howe.report import jsonable, load_schema

from conftest import module

SCHEMA = load_schema()


def run(*argv):
    code, text = cli.run(list(argv))
    report = json.loads(text)
    jsonschema.validate(report, SCHEMA)
    return code, report, text


def section(report, name):
    return next(s for s in report["checks"] if s["name"] == name)


def key_of(entry, r):
    mask = sum(1 << i for i in entry["wedge"])
    return tuple(entry["mono"]) + (0,) * (r - len(entry["mono"])), entry["tau"], mask


def no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(no_floats(v) for v in obj)
    return True


COMMANDS = [
    ["verify-spo", "--group", "A1", "--c", "1/3", "--degree", "6"],
    ["decompose", "--group", "A1", "--c", "1/3", "--degree", "8", "--structural", "--compare-zero"],
    ["decompose", "--group", "A1", "--c", "1/3", "--degree", "8", "--sl2-only"],
    ["unitarity-scan", "--group", "A1", "--c-grid=-1;1/2", "--degree", "4"],
    ["centralizer", "--group", "A1xA1", "--c", "1/3,1/5", "--degree", "5"],
    ["hook", "--rank", "3", "--degree", "6"],
    ["hook", "--group", "B:2", "--degree", "4"],
    ["assumption-check", "--group", "B:2", "--c", "1/3,1/7"],
    ["assumption-check", "--group", "A1", "--c", "1/2"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:3]))
def test_reports_are_schema_valid(argv):
    code, report, text = run(*argv)
    assert code == (0 if report["status"] == "pass" else 2)
    assert report["header"]["command"] == argv[0]
    assert no_floats(report)
    assert text.endswith("\n")
    for s in report["checks"]:
        if s["status"] == "fail":
            assert s["witness"]


def test_verify_spo_exit_zero():
    code, report, _ = run("verify-spo", "--group", "A1", "--c", "1/3", "--degree", "8")
    assert code == 0
    sec = section(report, "spo_realization")
    assert sec["status"] == "pass"
    head = report["header"]
    assert (head["group"], head["r"], head["order"], head["c"], head["N"]) == ("A1", 1, 2, ["1/3"], 8)
    assert head["assumption"]["generic"] is True


def test_mutation_is_reported():
    code, report, _ = run("verify-spo", "--group", "A1", "--c", "1/3", "--degree", "6", "--mutate", "flip-e3minus")
    assert code == 2
    w = section(report, "spo_realization")["witness"]
    assert "block" in w and "difference" in w


def test_hook_table():
    code, report, _ = run("hook", "--rank", "2", "--degree", "3")
    assert code == 0
    table = section(report, "hook_bijection")["table"]
    got = {tuple(row["bidegree"]): tuple(row["hook"]) for row in table}
    assert got == {(0, 0): (), (1, 1): (1, 1), (1, 0): (1,), (2, 0): (2,), (3, 0): (3,)}


def test_decompose_degenerate_witness_replays():
    code, report, _ = run("decompose", "--group", "A1", "--c", "1/2", "--degree", "10")
    assert code == 2
    w = section(report, "main_theorem")["witness"]
    assert w["block"] == [0, 1] and w["sigma"] == "sgn"
    # replay: the vector sits in the sgn part of block (0, 1), and the only way to
    # reach that block from the lowest weight vector x (x) 1 is E2+, which kills it
    K = module("A1", "1/2")
    vec = {key_of(e, 1): Fraction(e["coeff"]) for e in w["vector"]}
    assert all(K.bidegree(k) == (0, 1) for k in vec)
    assert K.projector("sgn")(vec) == vec
    x1 = {((1,), 0, 0): Fraction(1)}
    assert K.generator("E2+")(x1) == {}
    assert K.generator("E2-")(vec) == x1
    assert [e["text"] for e in w["vector"]] == ["1 (x) e0 (x) x1"]


def test_unitarity_rows():
    code, report, _ = run("unitarity-scan", "--group", "A1", "--c-grid=-1;0;1/2", "--degree", "6")
    assert code == 0
    rows = section(report, "unitarity_scan")["rows"]
    assert [r["gram_positive_definite"] for r in rows] == [True, True, False]
    assert rows[2]["first_failure"]["m"] == 1


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.main(["hook", "--rank", "2", "--degree", "3", "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    jsonschema.validate(json.loads(out.read_text()), SCHEMA)


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-spo", "--group", "NoSuch:3", "--c", "1/3"],
        ["verify-spo", "--group", "A1", "--c", "1/3", "--degree", "3"],
        ["verify-spo", "--group", "A1", "--c", "x/3"],
        ["verify-spo", "--group", "B:2", "--c", "1/3,1/5,1/7"],
        ["verify-spo", "--group", "A1", "--c", "1/3", "--tau", "nonsense"],
        ["verify-spo", "--c", "1/3"],
        ["decompose", "--group", "D:4", "--c", "1/3"],
        ["hook", "--degree", "3"],
    ],
)
def test_usage_errors_exit_one(argv, capsys):
    assert cli.main(argv) == 1
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_one():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify-spo", "--group", "A1", "--mutate", "nope"])
    assert exc.value.code == 1


def test_jsonable_rejects_floats():
    with pytest.raises(TypeError):
        jsonable({"x": 0.5})
    assert jsonable({"x": Fraction(-2, 7)}) == {"x": "-2/7"}


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-spo", "--group", "B:2", "--c", "1/3,1/7", "--degree", "6"],
        ["centralizer", "--group", "B:2", "--c", "1/3,1/7", "--degree", "5"],
        ["centralizer", "--group", "A1", "--c", "1/3", "--degree", "6", "--mutate", "drop-f-half"],
    ],
    ids=["spo", "centralizer", "mutant"],
)
def test_deterministic_across_threads(argv):
    _, _, one = run(*argv, "--threads", "1")
    _, _, four = run(*argv, "--threads", "4")
    _, _, again = run(*argv, "--threads", "1")
    assert one == four == again


def test_console_entry_point(tmp_path):
    out = tmp_path / "h.json"
    proc = subprocess.run(
        [sys.executable, "-m", "cherednik_howe.cli", "hook", "--rank", "2", "--degree", "3", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert out.read_text() == cli.run(["hook", "--rank", "2", "--degree", "3"])[1]
