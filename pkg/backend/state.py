from typing import TypedDict, Annotated, Sequence, List
from operator import add

# Suites in the order the verification graph runs them
SUITES = ("algebra", "dg", "endo", "transfer", "hochschild", "bimodule", "burau")


class VerifyState(TypedDict):
    """State for one verification run over a single n"""

    # Run parameters
    n: int
    max_arity: int
    seed: int
    samples: int
    perturb: bool

    # Suites still to run, first entry is next
    pending: List[str]

    # Accumulated results, one report dict per suite
    reports: Annotated[Sequence[dict], add]
    log: Annotated[Sequence[str], add]
