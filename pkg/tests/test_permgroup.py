import math

import pytest
from hypothesis import given, strategies as st

from errors import DegreeMismatch, FormatError, NotHom, NotSubgroup, OrderBoundExceeded, WellDefinednessFailure
from permgroup import (Permutation, center, compose, direct_sum, extend_homomorphism, generate,
                       group_hom_failure, is_normal, is_subgroup, is_transitive, orbit, orbits,
                       regular_representation, right_cosets, stabilizer, symmetric_perm_group)
from quandle_core import cyclic_group

perms5 = st.permutations(range(5)).map(lambda p: Permutation(tuple(p)))


def P(text, degree):
    return Permutation.parse(text, degree)


def test_composition_applies_left_factor_first():
    a, b = P("(0 1)", 3), P("(1 2)", 3)
    assert (a * b).images[0] == 2
    assert (a * b) == P("(0 2 1)", 3)


def test_parse_and_print():
    p = P("(0 1)(2 3)", 4)
    assert p.images == (1, 0, 3, 2)
    assert str(p) == "(0 1)(2 3)"
    assert str(Permutation.identity(3)) == "()"
    assert P("()", 2).is_identity()


@pytest.mark.parametrize("text", ["(0 x)", "0 1", "(0 5)", "(0 1)(1 2)"])
def test_parse_rejects(text):
    with pytest.raises(FormatError):
        P(text, 3)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(Permutation.identity(2), Permutation.identity(3))


def test_cycle_data():
    p = P("(0 1)(2 3 4)", 5)
    assert p.cycle_type() == (3, 2)
    assert p.order() == 6
    assert p.parity() == "odd"
    assert P("(0 1 2 3)", 4).min_transpositions() == 3
    assert P("(0 1 2)", 3).parity() == "even"


@given(perms5, perms5, perms5)
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert (a * b).inverse() == b.inverse() * a.inverse()


def test_symmetric_group_orders():
    for n in range(1, 6):
        assert symmetric_perm_group(n).order == math.factorial(n)


def test_order_bound():
    with pytest.raises(OrderBoundExceeded):
        symmetric_perm_group(5, bound=100)


def test_orbits_and_transitivity(S3):
    G = generate([P("(0 1)", 3)])
    assert orbits(G) == [(0, 1), (2,)]
    assert orbit(G, 2) == (2,) and orbit(S3, 0) == (0, 1, 2)
    assert not is_transitive(G)
    assert is_transitive(S3)


def test_stabilizer_and_center(S3, S4):
    assert stabilizer(S3, 0).order == 2
    assert center(S3).order == 1
    assert center(generate([P("(0 1 2 3)", 4), P("(1 3)", 4)])).order == 2
    assert stabilizer(S4, 3).order == 6


def test_right_cosets(S3):
    H = generate([P("(1 2)", 3)])
    cosets = right_cosets(S3, H)
    assert len(cosets) == 3
    assert all(len(c) == 2 for c in cosets)
    assert cosets[0].representative.is_identity()
    with pytest.raises(NotSubgroup):
        right_cosets(H, S3)


def test_normality(S3):
    A3 = generate([P("(0 1 2)", 3)])
    assert is_subgroup(A3, S3) and is_normal(A3, S3)
    assert not is_normal(generate([P("(0 1)", 3)]), S3)


def test_extend_sign_homomorphism(S3):
    flip = Permutation((1, 0))
    phi = extend_homomorphism(S3, {g: flip for g in S3.generators}, 2)
    assert len(phi) == 6
    assert all((phi[g] == flip) == (g.parity() == "odd") for g in S3.elements)
    S2 = symmetric_perm_group(2)
    assert group_hom_failure(S3, S2, phi) is None


def test_extend_inconsistent_assignment(S3):
    flip = Permutation((1, 0))
    images = {P("(0 1)", 3): flip, P("(0 2)", 3): Permutation((0, 1))}
    with pytest.raises(WellDefinednessFailure):
        extend_homomorphism(S3, images, 2)


def test_extend_from_non_generating_set(S3):
    with pytest.raises(NotHom):
        extend_homomorphism(S3, {P("(0 1 2)", 3): P("(0 1 2)", 3)}, 3)


def test_regular_representation():
    G = regular_representation(cyclic_group(4))
    assert G.order == 4 and is_transitive(G) and G.is_abelian()


def test_direct_sum_blocks():
    p = direct_sum([P("(0 1)", 2), P("(0 1 2)", 3)])
    assert p.images == (1, 0, 3, 4, 2)
    assert p.parity() == "odd"


def test_to_finite_group_roundtrip(S3):
    G = S3.to_finite_group()
    assert G.order == 6 and G.identity == 0 and not G.is_abelian()
