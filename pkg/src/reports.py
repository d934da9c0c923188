"""
Check results and their rendering: pandas tables for humans, one sorted
JSON object per line for machines, CSV for the results/ directory
"""
import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd

from config import SUITE_RESULTS_PATH
from errors import jsonable

logger = logging.getLogger(__name__)

PASS, FAIL = "PASS", "FAIL"


@dataclass
class CheckResult:
    id: str
    claim: str
    status: str
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "paper_ref": self.claim, "claim": self.claim, "status": self.status,
                "witness": jsonable(self.witness)}


def results_frame(results: Iterable[CheckResult]) -> pd.DataFrame:
    rows = [dict(r.to_dict(), witness="" if r.witness is None else json.dumps(jsonable(r.witness)))
            for r in results]
    return pd.DataFrame(rows, columns=["id", "paper_ref", "status", "witness"])


def render_structured(records: Iterable[Dict[str, Any]]) -> str:
    return "\n".join(json.dumps(jsonable(r), sort_keys=True) for r in records)


def render_table(records: List[Dict[str, Any]]) -> str:
    if not records:
        return "(no rows)"
    df = pd.DataFrame([{k: _cell(v) for k, v in r.items()} for r in records])
    return df.to_string(index=False)


def _cell(value: Any) -> Any:
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(jsonable(value))
    return value


def render_results(results: List[CheckResult], fmt: str = "human") -> str:
    if fmt == "structured":
        return render_structured(r.to_dict() for r in results)
    table = results_frame(results).to_string(index=False) if results else "(no checks)"
    return table + "\n" + summary_line(results)


def summary_line(results: List[CheckResult]) -> str:
    passed = sum(r.passed for r in results)
    return f"Passed {passed}/{len(results)} checks"


def save_results(results: List[CheckResult], path: Optional[str] = None) -> str:
    """Write results as CSV; returns the path written"""
    path = path or SUITE_RESULTS_PATH
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    results_frame(results).to_csv(path, index=False)
    logger.info("saved %d results to %s", len(results), path)
    return path
