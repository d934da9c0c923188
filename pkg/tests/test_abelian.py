import itertools
import math

import pytest
import sympy
from hypothesis import given, strategies as st

from abelian import (AugmentedQuandle, FGAbelianGroup, IntMatrix, adtak, adtak_relations, natural_augmentation,
                     relation_group, smith_normal_form, verify_augmented)
from errors import AQ1Failure, ActionFailure, FormatError, NotKei
from inner import inn, symmetries
from quandle_core import conj_quandle, cyclic_group, symmetric_group, tak_quandle, trivial_quandle

matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(st.lists(st.integers(-20, 20), min_size=cols, max_size=cols),
                              min_size=rows, max_size=rows)))


def determinantal_divisor(rows, k):
    """gcd of all k x k minors"""
    M = sympy.Matrix(rows)
    g = 0
    for r in itertools.combinations(range(M.rows), k):
        for c in itertools.combinations(range(M.cols), k):
            g = math.gcd(g, int(M.extract(list(r), list(c)).det()))
    return g


def test_hand_checked_form():
    M = IntMatrix.from_rows([[2, 4], [6, 8]])
    U, S, V = smith_normal_form(M)
    assert S.tolist() == [[2, 0], [0, 4]]
    assert U @ M @ V == S


def test_row_vector_and_identity():
    assert smith_normal_form(IntMatrix.from_rows([[2, -2]]))[1].tolist() == [[2, 0]]
    assert smith_normal_form(IntMatrix.identity(3))[1] == IntMatrix.identity(3)
    assert smith_normal_form(IntMatrix.from_rows([[0, 0], [0, 0]]))[1].tolist() == [[0, 0], [0, 0]]


def test_ragged_rows_rejected():
    with pytest.raises(FormatError):
        IntMatrix.from_rows([[1, 2], [3]])


@given(matrices)
def test_smith_normal_form_invariants(rows):
    M = IntMatrix.from_rows(rows)
    U, S, V = smith_normal_form(M)
    assert U @ M @ V == S
    assert abs(sympy.Matrix(U.tolist()).det()) == 1
    assert abs(sympy.Matrix(V.tolist()).det()) == 1

    entries = S.tolist()
    assert all(entries[i][j] == 0 for i in range(S.rows) for j in range(S.cols) if i != j)
    diagonal = S.diagonal()
    assert all(d >= 0 for d in diagonal)
    for a, b in zip(diagonal, diagonal[1:]):
        assert (b % a == 0) if a else b == 0

    product = 1
    for k, d in enumerate(diagonal, start=1):
        product *= d
        assert product == determinantal_divisor(rows, k)


def test_abelian_group_printing():
    assert str(FGAbelianGroup(1, (2,))) == "Z x Z/2"
    assert str(FGAbelianGroup(2)) == "Z^2"
    assert str(FGAbelianGroup(0)) == "0"
    assert str(FGAbelianGroup(0, (2, 4))) == "Z/2 x Z/4"
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (2, 3))


def test_relation_group():
    assert relation_group(IntMatrix.from_rows([[2, -2]])) == FGAbelianGroup(1, (2,))
    assert relation_group(IntMatrix.from_rows([[1, 0], [0, 1]])) == FGAbelianGroup(0)


@pytest.mark.parametrize("K,expected", [
    (trivial_quandle(1), "Z"),
    (trivial_quandle(2), "Z x Z/2"),
    (trivial_quandle(3), "Z x Z/2 x Z/2"),
    (tak_quandle(cyclic_group(3)), "Z x Z/3"),
])
def test_adtak_values(K, expected):
    assert str(adtak(K)) == expected


def test_adtak_relation_rows(tait):
    rows = adtak_relations(tait).tolist()
    assert len(rows) == 9
    assert all(sum(r) == 0 for r in rows)


def test_adtak_requires_kei():
    with pytest.raises(NotKei):
        adtak(conj_quandle(symmetric_group(3)))


# ----------------------------------------------------------------------
# augmented quandles
# ----------------------------------------------------------------------
def test_natural_augmentation_verifies(quandles):
    for Q in quandles.values():
        verify_augmented(natural_augmentation(Q))


def test_shifted_augmentation_fails_aq1(tait):
    G = inn(tait)
    S = symmetries(tait)
    shifted = AugmentedQuandle(tait, G, {g: g for g in G.elements}, tuple(S[(x + 1) % 3] for x in range(3)))
    with pytest.raises(AQ1Failure):
        verify_augmented(shifted)


def test_trivial_augmentation_under_any_permutation_action(tait):
    T = trivial_quandle(3)
    G = inn(tait)
    A = AugmentedQuandle(T, G, {g: g for g in G.elements}, tuple(G.identity for _ in range(3)))
    verify_augmented(A)


def test_identity_must_act_trivially(tait):
    G = inn(tait)
    action = {g: g for g in G.elements}
    action[G.identity] = G.elements[1]
    with pytest.raises(ActionFailure):
        verify_augmented(AugmentedQuandle(tait, G, action, tuple(symmetries(tait))))
