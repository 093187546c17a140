from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from dataclasses_json import dataclass_json


@dataclass_json
@dataclass
class Check:
    """One verified claim; status is pass, fail or info."""
    name: str
    status: str
    witness: Optional[Any] = None

    @property
    def failed(self):
        return self.status == "fail"


@dataclass_json
@dataclass
class BasisBlock:
    source: int
    target: int
    degree: int
    elements: List[Any] = field(default_factory=list)


@dataclass_json
@dataclass
class BasisDump:
    schema_version: str
    algebra: str
    n: int
    dimension: int
    blocks: List[BasisBlock] = field(default_factory=list)


@dataclass_json
@dataclass
class SuiteReport:
    schema_version: str
    suite: str
    n: int
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self):
        return not any(c.failed for c in self.checks)


@dataclass_json
@dataclass
class TableEntry:
    arity: int
    inputs: List[List[int]]
    output: Any


@dataclass_json
@dataclass
class TransferDump:
    schema_version: str
    n: int
    max_arity: int
    layers: Dict[str, int] = field(default_factory=dict)
    entries: List[TableEntry] = field(default_factory=list)


def check(name, ok, witness=None):
    return Check(name=name, status="pass" if ok else "fail", witness=None if ok else witness)


def info(name, witness=None):
    return Check(name=name, status="info", witness=witness)


@dataclass_json
@dataclass
class VerifyDump:
    schema_version: str
    suites: List[str]
    n_values: List[int]
    reports: List[SuiteReport] = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.reports)
