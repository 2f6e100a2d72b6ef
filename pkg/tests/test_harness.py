import csv
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhfrac import harness
from hhfrac.bounds import ParamSet
from hhfrac.errors import DomainError
from hhfrac.fracint import Interval, TestFunction
from hhfrac.harness import (CSV_COLUMNS, EvaluationCache, SweepConfig, VerificationRecord, corpus_by_name,
                            emit_report, load_config, load_report, run_sweep, verify_theorem)

FNS = corpus_by_name()
SMALL = dict(thetas=[0.5, 1.0], alphas=[0.5, 1.0], ms=[0.75, 1.0], qs=[1.0, 2.0], intervals=[(1.0, 2.0)])


def test_corpus_members():
    assert set(FNS) == {"half_square", "identity", "neg_log", "cube_third", "constant"}
    for fn in FNS.values():
        assert fn.domain == Interval(0.1, 10.0)
        assert fn.claimed_classes


@pytest.mark.parametrize("theorem", ["2", "3", "5", "6", "7", "8", "9"])
def test_constant_function_verified_trivially(theorem):
    ps = ParamSet(1.0, 1.0, 1.0, 1.0, 2.0, 2.0) if theorem in "23" else ParamSet(0.5, 0.5, 0.75, 1.0, 2.0, 2.0)
    rec = verify_theorem(theorem, ps, FNS["constant"])
    assert rec.status == "verified"
    assert abs(rec.lhs) < 1e-10 and rec.bound >= 0


def test_half_square_examples():
    rec = verify_theorem("5", ParamSet(1.0, 1.0, 1.0, 1.0, 2.0, 1.0), FNS["half_square"])
    assert rec.status == "verified" and rec.slack >= 0
    assert rec.quadrature["lemma_gap"] <= 1e-7
    rec = verify_theorem("9", ParamSet(0.5, 0.5, 1.0, 1.0, 2.0, 2.0), FNS["half_square"])
    assert rec.slack >= 0
    # x^2 puts too little weight on the far endpoint to be harmonically (1/2, 1)-convex.
    assert rec.status == "skipped-uncertified" and rec.certification["witness"] is not None
    rec = verify_theorem("9", ParamSet(0.5, 1.0, 1.0, 1.0, 2.0, 2.0), FNS["half_square"])
    assert rec.status == "verified" and rec.slack >= 0
    assert [c["name"] for c in rec.constants] == ["H_left", "H_right"]


def test_identity_with_small_m_is_uncertified():
    rec = verify_theorem("5", ParamSet(0.5, 1.0, 0.5, 1.0, 2.0, 1.0), FNS["identity"])
    assert rec.status == "skipped-uncertified"
    assert rec.certification["status"] == "fail"
    assert rec.certification["max_violation"] == pytest.approx(0.5)
    assert rec.slack is not None and math.isfinite(rec.slack)


def test_precondition_failure_is_a_record():
    rec = verify_theorem("8", ParamSet(0.5, 1.0, 1.0, 1.0, 2.0, 1.0), FNS["half_square"])
    assert rec.status == "rejected" and "q" in rec.message
    rec = verify_theorem("5", ParamSet(0.5, 1.0, 1.0, 1.0, 1.0 + 1e-8), FNS["half_square"])
    assert rec.status == "degenerate"


def test_domain_must_cover_b_over_m():
    rec = verify_theorem("5", ParamSet(0.5, 1.0, 0.5, 1.0, 8.0), FNS["half_square"])
    assert rec.status == "degenerate" and "b/m" in rec.message


def test_false_bound_is_reported_after_retriage(monkeypatch):
    calls = []
    real = harness._fill_lhs

    def spy(rec, fn, ps, quad, cache):
        calls.append(quad)
        real(rec, fn, ps, quad, cache)

    monkeypatch.setattr(harness, "_fill_lhs", spy)
    monkeypatch.setattr(harness.bounds, "bound", lambda *args: 0.0)
    rec = verify_theorem("5", ParamSet(0.5, 1.0, 1.0, 1.0, 2.0), FNS["half_square"])
    assert rec.status == "violated"
    assert rec.quadrature["retried"] is True
    assert calls[1].abs_tol == pytest.approx(calls[0].abs_tol / 10)


def test_inconsistent_routes_are_flagged():
    # A wrong derivative breaks the identity between the two evaluations of I_f.
    wrong = TestFunction("wrong", lambda x: x**2, lambda x: 3 * x, Interval(0.1, 10))
    rec = verify_theorem("5", ParamSet(0.5, 1.0, 1.0, 1.0, 2.0), wrong)
    assert rec.status == "quadrature-inconsistent"


def test_no_false_verification():
    records = run_sweep(SweepConfig(**SMALL))
    for r in records:
        if r.status == "verified" and r.theorem not in ("4", "identity"):
            assert r.certification["status"] == "pass"
            assert r.slack >= -1e-7 * (1 + r.bound)
            assert r.quadrature["lemma_gap"] <= 1e-7


def test_empty_grid():
    assert run_sweep(SweepConfig(thetas=[], intervals=[])) == []


def test_sweep_contents_and_order():
    records = run_sweep(SweepConfig(**SMALL))
    assert not [r for r in records if r.status == "violated"]
    theorems = [r.theorem for r in records]
    assert theorems == sorted(theorems, key=["2", "3", "5", "6", "7", "8", "9", "4", "identity"].index)
    assert {r.theorem for r in records} >= {"4", "identity"}
    # q = 1 points are only swept for the power-mean theorems.
    assert all(r.q > 1 for r in records if r.theorem in ("3", "7", "8", "9"))
    sandwich_fns = {r.function for r in records if r.theorem == "4" and r.status == "verified"}
    assert "neg_log" not in sandwich_fns and "half_square" in sandwich_fns


def test_sweep_is_deterministic(tmp_path):
    cfg = SweepConfig(**SMALL, functions=["identity", "neg_log"])
    emit_report(run_sweep(cfg), "csv", tmp_path / "a.csv")
    emit_report(run_sweep(cfg), "csv", tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_unknown_config_values():
    with pytest.raises(DomainError):
        SweepConfig(functions=["nope"])
    with pytest.raises(DomainError):
        SweepConfig(theorems=["10"])


def test_reports_round_trip(tmp_path):
    records = run_sweep(SweepConfig(**SMALL, functions=["identity", "half_square"]))
    records.append(VerificationRecord("8", "identity", 0.5, 1.0, 1.0, 1.0, 2.0, 1.0, message="bad q"))
    for fmt in ("csv", "json"):
        path = tmp_path / f"r.{fmt}"
        emit_report(records, fmt, path)
        assert load_report(path) == records


def test_csv_layout(tmp_path):
    rec = verify_theorem("5", ParamSet(0.5, 1.0, 1.0, 1.0, 2.0), FNS["half_square"])
    emit_report([], "csv", tmp_path / "empty.csv")
    rows = list(csv.reader(open(tmp_path / "empty.csv")))
    assert rows == [list(CSV_COLUMNS) + ["details"]]
    emit_report([rec], "csv", tmp_path / "one.csv")
    rows = list(csv.DictReader(open(tmp_path / "one.csv")))
    assert len(rows) == 1 and float(rows[0]["slack"]) == rec.slack
    assert rows[0]["lhs"] == format(rec.lhs, ".17g")


def test_json_layout(tmp_path):
    emit_report([], "json", tmp_path / "empty.json")
    assert json.loads((tmp_path / "empty.json").read_text()) == []
    rec = verify_theorem("6", ParamSet(0.5, 0.5, 1.0, 1.0, 2.0, 2.0), FNS["half_square"])
    emit_report([rec], "json", tmp_path / "one.json")
    (obj,) = json.loads((tmp_path / "one.json").read_text())
    assert [c["name"] for c in obj["constants"]] == ["C4", "C5", "C6"]
    assert "2F1(2,1;theta+2;1-a/b)" in obj["constants"][0]["pieces"]


def test_report_io_errors_name_the_path(tmp_path):
    with pytest.raises(OSError, match="missing"):
        emit_report([], "csv", tmp_path / "missing" / "r.csv")
    with pytest.raises(OSError, match="nothing"):
        load_report(tmp_path / "nothing.json")


def test_load_config(tmp_path):
    path = tmp_path / "sweep.toml"
    path.write_text(
        'theta = [0.5]\nalpha = [1.0]\nm = [1.0]\nq = [2]\nintervals = [[1, 2]]\n'
        'functions = ["half_square"]\ntheorems = ["7"]\nseed = 5\nbudget = 500\n'
        '[quadrature]\nabs_tol = 1e-11\n[output]\ncsv = "out.csv"\n')
    cfg = load_config(path)
    assert cfg.thetas == [0.5] and cfg.qs == [2.0] and cfg.intervals == [(1.0, 2.0)]
    assert cfg.quad.abs_tol == 1e-11 and cfg.seed == 5 and cfg.budget == 500
    assert cfg.csv_path == str(tmp_path / "out.csv") and cfg.json_path is None
    (rec,) = [r for r in run_sweep(cfg) if r.theorem == "7"]
    assert rec.certification["seed"] == 5 and rec.certification["samples"] == 17**3 + 500


def test_load_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("thetas = [0.5]\n")
    with pytest.raises(DomainError):
        load_config(path)


def test_reduction_check_finds_no_discrepancies():
    count, found = harness.check_reductions(SweepConfig().intervals, SweepConfig().qs)
    assert count == 3 * (3 + 3 * 2 * 3) and found == []


def test_cache_shares_certifications():
    cache = EvaluationCache()
    ps = ParamSet(0.5, 1.0, 1.0, 1.0, 2.0, 2.0)
    verify_theorem("7", ps, FNS["half_square"], cache=cache)
    verify_theorem("8", ps, FNS["half_square"], cache=cache)
    assert len(cache._cert) == 1 and len(cache._lhs) == 1


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["5", "6", "7", "8", "9"]), st.sampled_from([0.25, 0.6, 1.0]),
       st.sampled_from([0.3, 1.0]), st.sampled_from([0.6, 1.0]), st.sampled_from([1.5, 2.5]),
       st.sampled_from(list(FNS)))
def test_certified_records_never_violate(theorem, theta, alpha, m, q, name):
    rec = verify_theorem(theorem, ParamSet(theta, alpha, m, 1.0, 3.0, q), FNS[name])
    assert rec.status in ("verified", "skipped-uncertified")
