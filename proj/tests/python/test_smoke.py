import math

import pytest

import triage_sim as ts


def test_urgency_of():
    assert ts.urgency_of([]) == 9
    assert ts.urgency_of(["pneumothorax"]) == 1
    assert ts.urgency_of(["mass", "congestion"]) == 2
    with pytest.raises(ts.ConfigError):
        ts.urgency_of(["fracture"])


def test_fit_binormal_matches_anchors():
    a, b = ts.fit_binormal((0.05, 0.82), (0.20, 0.95))
    assert a == pytest.approx(2.409206570412232, abs=1e-12)
    assert b == pytest.approx(0.908191135121283, abs=1e-12)
    assert ts.binormal_tpr(a, b, 0.05) == pytest.approx(0.82, abs=1e-9)
    with pytest.raises(ts.TriageError):
        ts.fit_binormal((0.1, 0.5), (0.1, 0.6))


def test_welch_reference():
    r = ts.welch_t_test([1, 2, 3, 4, 5], [2, 3, 4, 5, 6])
    assert r["t"] == pytest.approx(-1.0, abs=1e-12)
    assert r["df"] == pytest.approx(8.0, abs=1e-12)
    assert r["p"] == pytest.approx(0.34659350708733416, abs=1e-10)


def test_summarize():
    s = ts.summarize([10.0, 20.0, 30.0])
    assert (s["n"], s["mean"], s["median"], s["max"]) == (3, 20.0, 20.0, 30.0)


def test_run_simulation_is_deterministic():
    a = ts.run_simulation(policy="prio", days=30, seed=7, with_samples=True)
    b = ts.run_simulation(policy="prio", days=30, seed=7, with_samples=True)
    assert a["trace_csv"] == b["trace_csv"]
    assert a["exam_count"] > 2000
    assert set(a["summary"]) == set(ts.FINDINGS) | {"normal"}
    pn = a["samples"]["pneumothorax"]
    assert a["summary"]["pneumothorax"]["n"] == len(pn)
    assert math.isclose(a["summary"]["pneumothorax"]["mean"], sum(pn) / len(pn))


def test_run_simulation_errors():
    with pytest.raises(ts.ConfigError):
        ts.run_simulation(policy="lifo", days=3)
    with pytest.raises(ts.DataError):
        ts.run_simulation(config="/nonexistent/run.ini")


def test_comparison_shares_workload():
    rep = ts.run_comparison(days=60, seed=3)
    arms = rep["arms"]
    assert list(arms) == ["FIFO", "Prio-lowFNR", "Prio-lowFPR", "Prio-MAXwaiting", "Perfect"]
    assert {a["workload_hash"] for a in arms.values()} == {rep["workload_hash"]}
    pn = {k: v["summary"]["pneumothorax"]["mean"] for k, v in arms.items()}
    assert pn["Perfect"] < pn["FIFO"]
    assert "pneumothorax" in arms["Prio-lowFPR"]["welch_vs_fifo"]
    assert arms["FIFO"]["welch_vs_fifo"] == {}


def test_sweep():
    sw = ts.run_sweep(grid=[0.05, 0.5], days=40, seed=3)
    assert [p["fpr"] for p in sw["points"]] == [0.05, 0.5]
    assert sw["points"][0]["tpr"] == pytest.approx(0.82)
    assert sw["fifo_mean_rtat"] > 0
    with pytest.raises(ts.ConfigError):
        ts.run_sweep(grid=[0.5, 0.1], days=5)
