import json
import re

import jsonschema
import pytest

from invquot.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from invquot.report import dump_json, load_schema

SCHEMA = load_schema()
CONFIG = re.compile(r"\(\d+,-?\d+\)(\+\(\d+,-?\d+\))*")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, name", [
    (("classify", "--k2", "7"), "classify_k2_7.txt"),
    (("classify", "--k2", "7", "--format", "json"), "classify_k2_7.json"),
    (("enriques", "--k2", "7"), "enriques_k2_7.txt"),
    (("examples",), "examples.txt"),
])
def test_golden(capsys, golden, argv, name):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out == (golden / name).read_text(encoding="utf-8")


@pytest.mark.parametrize("argv", [
    ("classify", "--k2", "7"),
    ("classify", "--k2", "7", "--trace"),
    ("classify", "--k2", "1"),
    ("classify", "--k2", "9"),
    ("enriques", "--k2", "7"),
    ("enriques", "--k2", "5"),
    ("examples",),
    ("rules",),
])
def test_json_validates_and_round_trips(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert dump_json(doc) == out


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "classify", "--k2", "7")
    _, raw, _ = run(capsys, "classify", "--k2", "7", "--format", "json")
    doc = json.loads(raw)
    from_json = {c["text"] for s in doc["sections"] for cell in s["cells"] for c in cell["admitted"]}
    from_text = {tok for line in text.splitlines() for tok in line.split() if CONFIG.fullmatch(tok)}
    # excluded configurations are listed in their own table
    excluded = {e["text"] for s in doc["sections"] for cell in s["cells"] for e in cell["excluded"]}
    assert from_text == from_json | excluded
    assert len(from_json) == 14


def test_markdown_table_format(capsys):
    code, out, _ = run(capsys, "classify", "--k2", "7", "--format", "paper")
    assert code == EXIT_OK and out.startswith("Classification") and "| 9 | -2 |" in out


def test_trace_shows_budget(capsys):
    _, out, _ = run(capsys, "classify", "--k2", "7", "--k", "9", "--trace")
    assert "rejected (0,-14): K_W.B0 = 12 + 2l = 6 forces l = -3 < 0" in out


def test_enriques_trace(capsys):
    _, out, _ = run(capsys, "enriques", "--k2", "7", "--trace")
    assert "(3,0) beta=2 -> (5,8)" in out and "2-torsion" in out


def test_numeric_only_ks2(capsys):
    _, out, _ = run(capsys, "classify", "--k2", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["numeric_only"] and doc["provenance"]["geometric_rules_applied"] == 0


@pytest.mark.parametrize("argv", [
    ("classify", "--k2", "12"),
    ("classify", "--k2", "7", "--k", "6"),
    ("classify", "--k2", "7", "--kw2", "5"),
    ("classify",),
    ("rules", "--id", "NOPE"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_rules_listing(capsys):
    _, out, _ = run(capsys, "rules", "--format", "json")
    ids = [r["id"] for r in json.loads(out)["rules"]]
    assert len(ids) >= 8 and "MQS-2.1.1" in ids and "E-f" in ids
    _, out, _ = run(capsys, "rules", "--provenance", "numeric", "--format", "json")
    assert {r["provenance"] for r in json.loads(out)["rules"]} == {"numeric"}
    code, out, _ = run(capsys, "rules", "--id", "LEMMA-K7")
    assert code == EXIT_OK and out.startswith("LEMMA-K7")


def test_rules_file(capsys, tmp_path):
    path = tmp_path / "extra.rules"
    path.write_text("X-1 | geometric | ks2=7,k=9 | (3,-2) | test citation\n", encoding="utf-8")
    code, out, _ = run(capsys, "classify", "--k2", "7", "--k", "9", "--rules-file", str(path), "--format", "json")
    assert code == EXIT_OK
    cell = json.loads(out)["sections"][0]["cells"][0]
    assert len(cell["admitted"]) == 9
    assert {"X-1", "MQS-2.1.1"} == {e["rule"] for e in cell["excluded"]}


def test_bad_rules_file(capsys, tmp_path):
    path = tmp_path / "bad.rules"
    path.write_text("X-1 | geometric | * | (3,-2)\n", encoding="utf-8")
    code, _, err = run(capsys, "classify", "--k2", "7", "--rules-file", str(path))
    assert code == EXIT_USAGE and "rules file" in err
    code, _, _ = run(capsys, "classify", "--k2", "7", "--rules-file", str(tmp_path / "missing"))
    assert code == EXIT_USAGE


def test_examples_mismatch_exit_code(capsys):
    import dataclasses
    from invquot.cli import build_parser, cmd_examples
    from invquot.covers import COVER_DATA
    bad = dataclasses.replace(COVER_DATA[2], expected_k=7)
    out, code = cmd_examples(build_parser().parse_args(["examples"]), data=(bad,))
    assert code == EXIT_VIOLATION and "expected 7" in out
