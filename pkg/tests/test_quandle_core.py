import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from errors import AxiomViolation, MalformedTable, NotAbelian, SizeBound
from quandle_core import (TAIT_TABLE, QuandleHom, all_subquandles, canonical_table, conj_quandle,
                          core_quandle, cyclic_group, davis_quotient, direct_product_group,
                          disjoint_union_inclusions, disjoint_union_quandle, find_complement,
                          find_isomorphism, generated_subquandle, hom_failure, identity_hom, is_hom,
                          is_rack, is_subquandle, join, meet, product_projections, product_quandle,
                          reachability_classes, symmetric_group, tak_quandle, trivial_quandle,
                          validate_group, validate_quandle)
from inner import two_cycle_quandle


def relabel(table, perm):
    """Table of the same quandle with element x renamed perm[x]"""
    n = len(table)
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            out[perm[x]][perm[y]] = perm[table[x][y]]
    return out


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------
def test_tait_display_is_one_indexed(tait):
    assert tait.display_rows() == [[1, 3, 2], [3, 2, 1], [2, 1, 3]]
    assert tait.display_rows(one_indexed=False) == [list(r) for r in TAIT_TABLE]


def test_q2_witness_names_the_broken_column():
    table = [list(r) for r in TAIT_TABLE]
    table[0][1] = 0
    with pytest.raises(AxiomViolation) as info:
        validate_quandle(table)
    assert info.value.axiom == "Q2"
    assert info.value.witness == (2, 1)


def test_q1_checked_first():
    with pytest.raises(AxiomViolation) as info:
        validate_quandle([[1, 0], [0, 1]])
    assert info.value.axiom == "Q1"
    assert info.value.witness == (0, 0)


@pytest.mark.parametrize("x,y,v", [(x, y, v) for x, y in itertools.product(range(3), repeat=2)
                                   for v in range(3) if v != TAIT_TABLE[x][y]])
def test_every_single_cell_mutation_of_tait_is_rejected(x, y, v):
    table = [list(r) for r in TAIT_TABLE]
    table[x][y] = v
    with pytest.raises(AxiomViolation):
        validate_quandle(table)


def test_malformed_tables():
    with pytest.raises(MalformedTable):
        validate_quandle([[0, 1], [1]])
    with pytest.raises(MalformedTable):
        validate_quandle([[0, 2], [1, 1]])
    with pytest.raises(MalformedTable):
        validate_quandle([[0, "a"], [1, 1]])


def test_empty_table_is_a_quandle():
    assert validate_quandle([]).n == 0


def test_rack_that_is_not_a_quandle():
    swap = [[1, 1], [0, 0]]
    assert is_rack(swap)
    with pytest.raises(AxiomViolation):
        validate_quandle(swap)


def test_inverse_table_undoes_operation(tait):
    for x, y in itertools.product(range(3), repeat=2):
        assert tait.inv_act(tait.act(x, y), y) == x


# ----------------------------------------------------------------------
# groups
# ----------------------------------------------------------------------
def test_cyclic_and_product_groups():
    Z = direct_product_group(cyclic_group(2), cyclic_group(3))
    assert Z.order == 6 and Z.is_abelian()
    assert symmetric_group(3).order == 6
    assert not symmetric_group(3).is_abelian()


def test_non_associative_table_rejected():
    table = [[0, 1, 2], [1, 0, 0], [2, 0, 0]]
    with pytest.raises(MalformedTable):
        validate_group(table)


# ----------------------------------------------------------------------
# constructions
# ----------------------------------------------------------------------
def test_trivial_quandle():
    T = trivial_quandle(4)
    assert all(T.act(x, y) == x for x in range(4) for y in range(4))


def test_conjugation_in_abelian_group_is_trivial():
    assert conj_quandle(cyclic_group(5)).table() == trivial_quandle(5).table()


def test_tak_z3_is_the_tait_table(tait):
    assert tak_quandle(cyclic_group(3)).table() == tait.table()


def test_tak_requires_abelian():
    with pytest.raises(NotAbelian):
        tak_quandle(symmetric_group(3))


def test_core_is_kei_and_agrees_with_tak_on_abelian_groups(groups):
    for G in groups.values():
        assert core_quandle(G).is_kei()
    A = cyclic_group(6)
    assert core_quandle(A).table() == tak_quandle(A).table()


def test_conj_of_every_small_group_is_a_quandle(groups):
    for G in groups.values():
        assert conj_quandle(G).n == G.order


def test_product_projections_are_homs(tait):
    T2 = trivial_quandle(2)
    P = product_quandle(tait, T2)
    assert P.n == 6
    first, second = product_projections(tait, T2, P)
    assert is_hom(first) and is_hom(second)
    assert first.is_surjective() and second.is_surjective()


def test_disjoint_union_of_singletons_is_trivial():
    T1 = trivial_quandle(1)
    assert disjoint_union_quandle(T1, T1).table() == trivial_quandle(2).table()


def test_disjoint_union_inclusions(tait):
    left, right = disjoint_union_inclusions(tait, trivial_quandle(2))
    assert is_hom(left) and is_hom(right)
    assert right.image() == (3, 4)


def test_davis_quotient_shift():
    D = davis_quotient(2)
    inf, s = 2, 3
    assert [D.act(x, s) for x in range(4)] == [1, 0, inf, s]
    assert D.act(0, inf) == 0
    assert davis_quotient(1).n == 3


# ----------------------------------------------------------------------
# homomorphisms and isomorphism
# ----------------------------------------------------------------------
def test_hom_failure_witness(tait):
    assert hom_failure(QuandleHom(tait, trivial_quandle(2), (0, 1, 1))) == (0, 1)
    assert is_hom(QuandleHom(tait, trivial_quandle(1), (0, 0, 0)))
    assert is_hom(identity_hom(tait))


def test_m3_is_isomorphic_to_tait(tait):
    f = find_isomorphism(two_cycle_quandle(3), tait)
    assert f is not None and is_hom(f) and f.is_bijective()


def test_non_isomorphic(tait):
    assert find_isomorphism(trivial_quandle(3), tait) is None
    assert find_isomorphism(trivial_quandle(2), tait) is None


@given(st.permutations(range(5)))
def test_isomorphism_found_after_relabelling(perm):
    Q = tak_quandle(cyclic_group(5))
    S = validate_quandle(relabel(Q.table(), perm))
    f = find_isomorphism(Q, S)
    assert f is not None and is_hom(f)
    assert canonical_table(Q) == canonical_table(S)


def test_reachability_classes():
    assert reachability_classes(trivial_quandle(3)) == [(0,), (1,), (2,)]
    assert reachability_classes(davis_quotient(2)) == [(0, 1), (2,), (3,)]


# ----------------------------------------------------------------------
# subquandles
# ----------------------------------------------------------------------
def test_subquandles_of_tait(tait):
    assert [A.elems for A in all_subquandles(tait)] == [(), (0,), (1,), (2,), (0, 1, 2)]
    assert generated_subquandle(tait, [0, 1]).is_full()
    assert not is_subquandle(tait, [0, 1])


def test_meet_join_and_complement(tait):
    subs = all_subquandles(tait)
    a, b = subs[1], subs[2]
    assert meet(a, b).elems == ()
    assert join(a, b).is_full()
    assert find_complement(tait, a).elems == (1,)
    assert find_complement(tait, subs[-1]).elems == ()


def test_subquandle_as_quandle():
    U = disjoint_union_quandle(trivial_quandle(1), validate_quandle(TAIT_TABLE))
    A = generated_subquandle(U, [1])
    assert A.elems == (1,)
    B = generated_subquandle(U, [1, 2])
    assert B.as_quandle().table() == TAIT_TABLE


def test_subquandle_enumeration_is_bounded():
    with pytest.raises(SizeBound):
        all_subquandles(trivial_quandle(9))


def test_tables_are_read_only(tait):
    with pytest.raises(ValueError):
        tait.op[0, 0] = 1
    assert isinstance(tait.op, np.ndarray)
