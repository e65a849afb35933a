import math

import pytest

import dcsharp


def test_sequence_values():
    M = dcsharp.parse_sequence("gevrey:1")
    assert M.spec == "gevrey:1"
    assert M.has_exact
    assert M.log_weight(0) == 0.0
    assert M.log_weight(5) == pytest.approx(math.log(120))


def test_bad_spec():
    with pytest.raises(ValueError):
        dcsharp.parse_sequence("bogus")


def test_phi():
    log_phi, argmax, saturated = dcsharp.phi_log(dcsharp.parse_sequence("gevrey:1"), math.log(1000.0))
    assert argmax == 999
    assert not saturated
    assert log_phi == pytest.approx(1009.442611051938, rel=1e-12)


def test_analysis():
    assert dcsharp.log_convexity("gevrey:1")["log_convex"]
    assert dcsharp.quasianalyticity("gevrey:1")["trend"] == "converging-like"
    assert dcsharp.compare("analytic", "gevrey:1")["verdict"] == "strictly-contained-diagnostic"


def test_flat_round_trip():
    G = dcsharp.construct_flat("gevrey:1", "sqrt", 64)
    assert [e["lambda"] for e in G["entries"]] == [2, 12, 52]
    cert = dcsharp.lower_bound(G, [2, 12])
    assert all(e["pass"] for e in cert["entries"])
    table = dcsharp.sharpness(G, "gevrey:1.5")
    r = [row["ratio_root"] for row in table["rows"]]
    assert r == sorted(r)
    with pytest.raises(ValueError):
        dcsharp.sharpness(G, "gevrey:3")


def test_construction_refused():
    with pytest.raises(RuntimeError):
        dcsharp.construct_flat("analytic")


def test_counterexample():
    c = dcsharp.counterexample(pairs=8, K=2000)
    assert c["log_convex"]["nondecreasing"]
    assert c["diff_closed"]["bounded_by_four"]


def test_selftest_subset():
    rows = dcsharp.selftest([1, 11])
    assert len(rows) == 2 and all(ok for _, ok in rows)
