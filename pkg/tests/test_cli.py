"""Command line behavior: exit codes, identity labels, serialization
round trips, and replayability of the machine report."""

import json

import pytest

from twilledlr import catalog
from twilledlr.cli import (MissingSection, load_structure, main,
                           parse_structure, serialize_structure)


def _roundtrip_dict(entry):
    return serialize_structure(entry.twilled, entry.volume,
                               entry.connections, None, None)


def test_exit_zero_on_clean_instance(capsys):
    assert main(["all", "matched-rank1"]) == 0
    out = capsys.readouterr().out
    assert "all identities hold" in out
    assert "FAIL" not in out


@pytest.mark.parametrize("name,label", [
    ("jet-line-perturbed", "1.7.1"),
    ("cosolvable-pair-perturbed", "1.7.2"),
    ("solvable-pair-perturbed", "1.7.3"),
])
def test_exit_one_names_broken_identity(capsys, name, label):
    assert main(["twilled", name]) == 1
    out = capsys.readouterr().out
    assert "FAILED identities:" in out
    assert label in out.rsplit("FAILED identities:", 1)[1]


def test_exit_two_on_unknown_instance(capsys):
    assert main(["validate", "no-such-thing"]) == 2
    assert "input error" in capsys.readouterr().err


def test_exit_two_on_missing_section(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text(json.dumps({"algebra": {"dim": 1, "mult": []}}))
    assert main(["validate", str(p)]) == 2
    assert "modules" in capsys.readouterr().err


def test_missing_section_is_a_parse_error(tmp_path):
    with pytest.raises(MissingSection):
        parse_structure({"algebra": {"dim": 1, "mult": []},
                         "modules": {}, "actions": {}})


@pytest.mark.parametrize("name", catalog.names())
def test_serialize_parse_roundtrip(name):
    entry = catalog.get(name)
    d = _roundtrip_dict(entry)
    bundle = parse_structure(json.loads(json.dumps(d)))
    d2 = serialize_structure(bundle["twilled"], bundle["volume"],
                             bundle["connections"], None, None)
    assert d == d2


def test_machine_report_is_replayable(tmp_path, capsys):
    first = tmp_path / "first.json"
    assert main(["all", "jet-line-invariant", "--json", str(first)]) == 0
    capsys.readouterr()
    report = json.loads(first.read_text())
    assert report["ok"]

    struct = tmp_path / "replay-input.json"
    struct.write_text(json.dumps(report["structure"]))
    second = tmp_path / "second.json"
    assert main(["all", str(struct), "--json", str(second)]) == 0
    capsys.readouterr()
    replay = json.loads(second.read_text())
    assert replay["verdicts"] == report["verdicts"]
    assert replay["structure"] == report["structure"]


def test_report_uses_contract_labels(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["all", "matched-rank1", "--json", str(out)]) == 0
    capsys.readouterr()
    report = json.loads(out.read_text())
    labels = {v["identity"] for sec in report["verdicts"].values()
              for v in sec}
    required = {"1.7.1", "1.7.2", "1.7.3", "3.4.1-deg1", "4.7.2", "5.1",
                "5.3.6", "5.4.2", "5.4.5", "5.4.9", "6.15", "7.12", "7.13"}
    assert required <= labels, required - labels


def test_skip_oracle_drops_enumeration(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["bv", "matched-rank1", "--skip-oracle",
                 "--json", str(out)]) == 0
    capsys.readouterr()
    report = json.loads(out.read_text())
    labels = {v["identity"] for sec in report["verdicts"].values()
              for v in sec}
    assert "5.4.9" not in labels
    assert "5.3.7-exact" in labels


def test_load_structure_catalog_passthrough():
    bundle = load_structure("jet-line")
    assert bundle["name"] == "jet-line"
    assert set(bundle["connections"]) == {"invariant", "noninvariant"}
