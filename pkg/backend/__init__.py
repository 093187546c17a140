"""
Verification orchestration: one LangGraph node per suite of checks
"""

from backend.state import SUITES, VerifyState
from backend.tools import SUITE_FUNCTIONS, SuiteRequest, tool_run_suite
from backend.agent import verify_graph, create_verify_graph, run_suites, select_suites

__all__ = [
    "SUITES",
    "VerifyState",
    "SUITE_FUNCTIONS",
    "SuiteRequest",
    "tool_run_suite",
    "verify_graph",
    "create_verify_graph",
    "run_suites",
    "select_suites",
]
