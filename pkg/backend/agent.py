from typing import Iterable, List, Literal
from langgraph.graph import StateGraph, END
from backend.state import SUITES, VerifyState
from backend.tools import tool_run_suite

Route = Literal["algebra", "dg", "endo", "transfer", "hochschild", "bimodule", "burau", "done"]


def route_next(state: VerifyState) -> Route:
    """Send the run to the next pending suite"""
    pending = state.get("pending", [])
    return pending[0] if pending else "done"


def make_suite_node(suite: str):
    def node(state: VerifyState) -> dict:
        print(f"🔍 Running {suite} checks for n={state['n']}")
        result = tool_run_suite(
            suite,
            state["n"],
            max_arity=state.get("max_arity"),
            seed=state.get("seed"),
            samples=state.get("samples"),
            perturb=state.get("perturb", False),
        )
        return {
            "pending": [s for s in state.get("pending", []) if s != suite],
            "reports": [result["report"]],
            "log": [f"{suite}: {result['message']}"],
        }

    node.__name__ = f"{suite}_node"
    return node


def start_node(state: VerifyState) -> dict:
    return {"log": [f"n={state['n']}: suites {', '.join(state.get('pending', []))}"]}


# Build the graph
def create_verify_graph():
    workflow = StateGraph(VerifyState)

    workflow.add_node("start", start_node)
    for suite in SUITES:
        workflow.add_node(suite, make_suite_node(suite))

    workflow.set_entry_point("start")

    routes = {suite: suite for suite in SUITES}
    routes["done"] = END
    workflow.add_conditional_edges("start", route_next, routes)
    for suite in SUITES:
        workflow.add_conditional_edges(suite, route_next, routes)

    return workflow.compile()


verify_graph = create_verify_graph()


def select_suites(selector: str) -> List[str]:
    if selector == "all":
        return list(SUITES)
    if selector not in SUITES:
        raise ValueError(f"unknown suite '{selector}'; expected one of {', '.join(SUITES)} or all")
    return [selector]


def run_suites(n: int, suites: Iterable[str], max_arity: int, seed: int, samples: int,
               perturb: bool = False) -> List[dict]:
    """Run the selected suites for one n through the graph, in graph order"""
    pending = [s for s in SUITES if s in set(suites)]
    final = verify_graph.invoke(
        {
            "n": n,
            "max_arity": max_arity,
            "seed": seed,
            "samples": samples,
            "perturb": perturb,
            "pending": pending,
            "reports": [],
            "log": [],
        },
        {"recursion_limit": 4 * len(SUITES) + 4},
    )
    return list(final["reports"])
