import pytest

from backend.agent import create_verify_graph, route_next, run_suites, select_suites
from backend.state import SUITES
from backend.tools import SuiteRequest, tool_run_suite


def test_route_next():
    assert route_next({"pending": ["dg", "burau"]}) == "dg"
    assert route_next({"pending": []}) == "done"
    assert route_next({}) == "done"


def test_select_suites():
    assert select_suites("all") == list(SUITES)
    assert select_suites("burau") == ["burau"]
    with pytest.raises(ValueError):
        select_suites("nope")


def test_graph_runs_suites_in_order():
    # requested out of order, reported in graph order
    reports = run_suites(3, ["burau", "algebra"], max_arity=4, seed=0, samples=2)
    assert [r["suite"] for r in reports] == ["algebra", "burau"]
    assert all(r["n"] == 3 for r in reports)
    for r in reports:
        assert all(c["status"] != "fail" for c in r["checks"]), r


def test_graph_state_accumulates_log():
    graph = create_verify_graph()
    final = graph.invoke({
        "n": 2, "max_arity": 3, "seed": 0, "samples": 1, "perturb": False,
        "pending": ["algebra"], "reports": [], "log": [],
    })
    assert final["pending"] == []
    assert len(final["reports"]) == 1
    assert final["log"][0].startswith("n=2")


def test_tool_reports_unknown_suite():
    result = tool_run_suite("bogus", 3)
    assert result["success"] is False
    assert result["report"] is None


@pytest.mark.parametrize("suite", ["algebra", "dg", "endo", "transfer", "hochschild", "bimodule", "burau"])
def test_perturbations_are_detected(suite):
    n = 4 if suite in ("hochschild", "transfer") else 3
    result = tool_run_suite(suite, n, max_arity=4, seed=0, samples=2, perturb=True)
    assert result["success"] is False, result["message"]


@pytest.mark.parametrize("suite", SUITES)
def test_perturbations_are_detected_on_c1(suite):
    result = tool_run_suite(suite, 2, max_arity=4, seed=0, samples=2, perturb=True)
    assert result["success"] is False, result["message"]
    assert any(c["status"] == "fail" and "suite ran to completion" not in c["name"]
               for c in result["report"]["checks"])


def test_h2_perturbation_is_reported():
    result = tool_run_suite("endo", 3, max_arity=4, seed=0, samples=2, perturb=True)
    failed = [c["name"] for c in result["report"]["checks"] if c["status"] == "fail"]
    assert "d(h_2) = loop_down_2 + loop_up_2" in failed
    assert "d(h_1) = loop_down_1 + loop_up_1" in failed


@pytest.mark.parametrize("suite", ["algebra", "dg", "transfer", "bimodule", "burau"])
def test_unperturbed_suites_pass(suite):
    result = tool_run_suite(suite, 3, max_arity=4, seed=0, samples=2)
    assert result["success"], result["message"]


def test_request_validation():
    with pytest.raises(ValueError):
        SuiteRequest(n=1)
    with pytest.raises(ValueError):
        SuiteRequest(n=3, max_arity=2)
