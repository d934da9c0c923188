import pytest

from proposition_suite import PropositionSuite, naive_closure, run_suite
from quandle_core import TAIT_TABLE, davis_quotient
from reports import FAIL, PASS


@pytest.fixture(scope="module")
def full_run():
    return run_suite()


def test_every_block_passes(full_run):
    failed = [(r.id, r.witness) for r in full_run if r.status != PASS]
    assert failed == []
    blocks = {r.id.split("/")[0] for r in full_run}
    assert blocks == set(PropositionSuite.BLOCKS)


def test_check_ids_are_unique(full_run):
    ids = [r.id for r in full_run]
    assert len(ids) == len(set(ids))


@pytest.mark.parametrize("only", ["tait", ["density", "adtak"], "complementation"])
def test_selected_blocks(only):
    results = run_suite(only)
    names = [only] if isinstance(only, str) else only
    assert results
    assert {r.id.split("/")[0] for r in results} == set(names)
    assert all(r.status == PASS for r in results)


def test_broken_tait_table_fails_with_witness():
    table = [list(r) for r in TAIT_TABLE]
    table[0][1] = 0
    results = {r.id: r for r in run_suite("tait", tait_table=table)}
    display = results["tait/display"]
    assert display.status == FAIL
    assert display.witness["axiom"] == "Q2"
    assert display.witness["witness"] == [2, 1]
    assert results["tait/mutations"].status == FAIL


def test_unknown_block():
    with pytest.raises(ValueError):
        run_suite("spiral")


def test_runs_are_deterministic():
    first = [r.to_dict() for r in run_suite(["density", "induced-hom"], seed=3)]
    second = [r.to_dict() for r in run_suite(["density", "induced-hom"], seed=3)]
    assert first == second


def test_failing_check_does_not_stop_the_block():
    def boom():
        raise RuntimeError("bad")

    result = PropositionSuite._run_check("x/boom", "raises", boom)
    assert result.status == FAIL and result.witness == {"error": "RuntimeError", "message": "bad"}
    assert PropositionSuite._run_check("x/none", "ok", lambda: None).status == PASS
    assert PropositionSuite._run_check("x/false", "no", lambda: False).witness is None
    assert PropositionSuite._run_check("x/dict", "no", lambda: {"at": 1}).witness == {"at": 1}


def test_naive_closure():
    D = davis_quotient(2)
    assert naive_closure(D, [3]) == {3}
    assert naive_closure(D, [0, 3]) == {0, 1, 3}
    assert naive_closure(D, []) == set()
