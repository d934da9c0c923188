import json

import pandas as pd

from reports import FAIL, PASS, CheckResult, render_results, render_structured, render_table, save_results, summary_line

RESULTS = [
    CheckResult("tait/display", "1-indexed table", PASS),
    CheckResult("tait/mutations", "mutations rejected", FAIL, {"accepted_mutation": (0, 1, 2)}),
]


def test_structured_lines_have_sorted_keys():
    lines = render_structured([{"b": 1, "a": (1, 2)}, {"c": None}]).splitlines()
    assert lines == ['{"a": [1, 2], "b": 1}', '{"c": null}']


def test_structured_results():
    lines = render_results(RESULTS, "structured").splitlines()
    records = [json.loads(line) for line in lines]
    assert [r["status"] for r in records] == [PASS, FAIL]
    assert records[1]["witness"] == {"accepted_mutation": [0, 1, 2]}
    assert list(records[0]) == ["claim", "id", "paper_ref", "status", "witness"]
    assert records[0]["paper_ref"] == records[0]["claim"] == RESULTS[0].claim


def test_human_results_end_with_summary():
    text = render_results(RESULTS)
    assert "tait/mutations" in text
    assert text.splitlines()[-1] == "Passed 1/2 checks"
    assert render_results([]).startswith("(no checks)")


def test_summary_line():
    assert summary_line(RESULTS[:1]) == "Passed 1/1 checks"
    assert summary_line([]) == "Passed 0/0 checks"


def test_render_table_flattens_lists():
    text = render_table([{"level": 0, "orbits": [(0, 1)]}])
    assert "[[0, 1]]" in text
    assert render_table([]) == "(no rows)"


def test_save_results_csv(tmp_path):
    path = save_results(RESULTS, str(tmp_path / "out" / "results.csv"))
    df = pd.read_csv(path)
    assert list(df.columns) == ["id", "paper_ref", "status", "witness"]
    assert list(df["status"]) == [PASS, FAIL]
    assert json.loads(df["witness"][1]) == {"accepted_mutation": [0, 1, 2]}
