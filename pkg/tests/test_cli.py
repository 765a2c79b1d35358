"""Command-line interface: output formats, determinism, exit codes."""

import csv
import io
import json

from gl2rep.cli import run
from gl2rep.gl2 import enumerate_classes, enumerate_irreps, params, parse_class, parse_irrep


def _run(argv):
    out = io.StringIO()
    code = run(argv, out=out)
    return code, out.getvalue()


def test_tensor_json_schema():
    code, text = _run(["tensor", "--q", "5", "--left", "V:1", "--right", "W:0,2", "--format", "json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["q"] == 5
    assert payload["left"] == "V:1" and payload["right"] == "W:0,2"
    assert payload["dim_check"] is True
    assert {"irrep": "W:1,3", "mult": 2} in payload["constituents"]


def test_gelfand_q7_lists_exactly_u_and_x():
    code, text = _run(["gelfand", "--q", "7", "--format", "json"])
    assert code == 0
    got = json.loads(text)["gelfand"]
    pr = params(7)
    expected = [pi.label() for pi in enumerate_irreps(pr) if pi.kind in ("U", "X")]
    assert sorted(got) == sorted(expected)


def test_output_is_byte_stable():
    for argv in (
        ["classes", "--q", "4"],
        ["irreps", "--q", "5", "--format", "json"],
        ["chartable", "--q", "3", "--format", "csv"],
        ["sl3-witness", "--q", "4", "--format", "json"],
    ):
        assert _run(argv) == _run(argv)


def test_chartable_csv_labels_round_trip():
    code, text = _run(["chartable", "--q", "5", "--format", "csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    pr = params(5)
    assert header[0] == "irrep"
    parsed_classes = [parse_class(h, pr) for h in header[1:]]
    assert parsed_classes == enumerate_classes(pr)
    parsed_irreps = [parse_irrep(r[0], pr) for r in body]
    assert parsed_irreps == enumerate_irreps(pr)


def test_usage_errors_exit_2():
    code, _ = _run(["tensor", "--q", "5", "--left", "V:1"])  # missing --right
    assert code == 2
    code, text = _run(["tensor", "--q", "5", "--left", "V:1", "--right", "W:3,3"])
    assert code == 2
    assert "label grammar" in text
    code, _ = _run(["classes", "--q", "6"])
    assert code == 2


def test_verify_small_suites_pass():
    code, text = _run(["verify", "--q", "3", "--suite", "census"])
    assert code == 0
    assert "PASS census q=3" in text
    code, text = _run(["verify", "--suite", "s4-fixture", "--format", "json"])
    assert code == 0
    assert json.loads(text)["pass"] is True


def test_verify_tensor_agree_q2():
    code, text = _run(["verify", "--q", "2", "--suite", "tensor-agree", "--format", "json"])
    assert code == 0
    report = json.loads(text)["reports"][0]
    assert report["mode"] == "exhaustive" and report["triples"] == 27


def test_verify_respects_ceiling():
    code, text = _run(["verify", "--q", "11", "--suite", "census", "--format", "json"])
    # skipped, nothing failed
    assert code == 0
    assert json.loads(text)["reports"][0]["skipped"]


def test_budget_env_soft_caps_suites(monkeypatch):
    # a zero budget means no new checks start; nothing ran, nothing failed
    monkeypatch.setenv("GT_BUDGET_SECONDS", "0")
    code, text = _run(["verify", "--q", "3", "--suite", "all", "--format", "json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["budget_exhausted"] is True
    assert all("skipped" in r for r in payload["reports"])


def test_sl3_restrict_command():
    code, text = _run(["sl3-restrict", "--q", "3", "--pi", "piQS", "--to", "U:0", "--format", "json"])
    assert code == 0
    assert json.loads(text)["multiplicity"] == 2


def test_induct_counts():
    code, text = _run(["induct", "--q", "3", "--pi", "X:1", "--format", "json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["count"] == 14
    assert payload["total_dim"] == 48 * 2
