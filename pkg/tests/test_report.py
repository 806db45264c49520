import csv
import io
import json
import math
from fractions import Fraction

import pytest

from nlgap import errors
from nlgap.formulas import pn_mu1
from nlgap.report import (BoundEntry, BoundReport, ReportRequest, emit, report_from_dict,
                          run_report)


def test_hamming_self():
    rep = run_report(ReportRequest(family="hamming", params={"n": 2}))
    assert rep.get("mu1").value == pytest.approx(1.0, abs=1e-12)
    assert rep.get("mu1").kind == "reference"
    assert rep.get("identity_upper").exact == "2/3"
    assert rep.get("hamming_identity").exact == "2/3"
    exact = Fraction(rep.get("gap_exact").exact)
    assert exact <= Fraction(2, 3)
    assert Fraction(rep.get("path_bound").exact) <= exact
    assert Fraction(rep.get("gap_search").exact) >= exact
    assert rep.skipped == []


def test_tree_two_point():
    rep = run_report(ReportRequest(family="tree", params={"d": 3, "r": 1}, target="two:1"))
    assert rep.get("tree_lower").exact == "1/72"
    assert rep.get("cut_upper").exact == "6/5"
    assert rep.get("tree_upper").exact == "6/5"
    assert rep.get("path_bound").exact == "6/7"
    assert rep.get("path_bound").parameters["A"] == "7/6"
    assert rep.get("mu1").value == pytest.approx(1.0, abs=1e-12)
    assert rep.get("mu1").kind == "lower"
    assert rep.get("gap_exact").exact == "6/5"


def test_path_metric_file(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("metric 3\n0 2 3\n2 0 2\n3 2 0\n")
    rep = run_report(ReportRequest(family="path", params={"n": 3}, target=str(p)))
    assert rep.get("gap_exact").value >= pn_mu1(3) - 1e-12
    assert rep.get("path_mu1").value == pytest.approx(0.5)
    assert rep.target == str(p)


def test_graph_file_is_hashed(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("graph 3 3\n0 1 1\n1 2 1\n0 2 1\n")
    rep = run_report(ReportRequest(graph_path=str(p), bounds=("mu1", "gap-exact")))
    assert rep.graph["source"] == "file" and len(rep.graph["sha256"]) == 64
    assert [e.name for e in rep.entries] == ["mu1", "gap_exact"]


def test_caps_are_skipped_under_all():
    rep = run_report(ReportRequest(family="hamming", params={"n": 3}, cap=1000))
    assert {"name": "gap-exact", "reason": "SearchSpaceTooLarge"} in rep.skipped


def test_caps_raise_when_requested():
    with pytest.raises(errors.SearchSpaceTooLarge):
        run_report(ReportRequest(family="hamming", params={"n": 3}, cap=1000,
                                 bounds=("gap-exact",)))


def test_unknown_bound():
    with pytest.raises(errors.InputError):
        run_report(ReportRequest(family="path", params={"n": 2}, bounds=("nope",)))


def test_sandwich_violation_detected():
    rep = BoundReport(graph={}, target="self", entries=[
        BoundEntry("lo", "lower", 1.0, "1", "m"),
        BoundEntry("hi", "upper", 0.5, "1/2", "m"),
    ])
    with pytest.raises(errors.InconsistentBounds):
        rep.check_sandwich()
    rep.entries[1] = BoundEntry("hi", "upper", 1.0, "1", "m")
    rep.check_sandwich()


def test_empty_report():
    rep = BoundReport(graph={"source": "none"}, target="self")
    doc = json.loads(emit(rep, "json"))
    assert doc["schema"] == 1 and doc["entries"] == []
    rows = list(csv.reader(io.StringIO(emit(rep, "csv").decode())))
    assert len(rows) == 1


def test_emit_deterministic_and_round_trip():
    req = ReportRequest(family="tree", params={"d": 3, "r": 2}, target="two:1", seed=5)
    a = emit(run_report(req), "json")
    assert a == emit(run_report(req), "json")
    again = emit(report_from_dict(json.loads(a)), "json")
    assert again == a


def test_csv_one_row_per_entry():
    rep = run_report(ReportRequest(family="path", params={"n": 3}, target="line:0,1,3"))
    rows = list(csv.reader(io.StringIO(emit(rep, "csv").decode())))
    assert rows[0][:3] == ["name", "kind", "value"]
    assert len(rows) == 1 + len(rep.entries)
    for row, e in zip(rows[1:], rep.entries):
        assert row[0] == e.name and float(row[2]) == e.value


def test_timings_only_on_request():
    rep = run_report(ReportRequest(family="path", params={"n": 2}, bounds=("mu1",)))
    assert rep.entries[0].runtime_ms is None
    rep = run_report(ReportRequest(family="path", params={"n": 2}, bounds=("mu1",), timings=True))
    assert math.isfinite(rep.entries[0].runtime_ms)


def test_schema_mismatch():
    with pytest.raises(errors.FileFormatError):
        report_from_dict({"schema": 99})
