import math

import pytest

from cache_manager import CacheManager
from errors import IndexOutOfRange, InvalidSpec, NotConnected, NotHom, NotSurjective, SizeBound
from inner import (CosetQuandleSpec, aut, coset_quandle, ehrman_decompose, ehrman_roundtrip,
                   enumerate_connected, induced_coset_hom, inn, inn_orbits, is_connected, symmetry,
                   two_cycle_quandle)
from permgroup import Permutation, generate, is_normal, is_transitive, stabilizer
from quandle_core import (conj_quandle, davis_quotient, find_isomorphism, is_hom, reachability_classes,
                          symmetric_group, trivial_quandle)


def P(text, degree):
    return Permutation.parse(text, degree)


def test_symmetry_fixes_its_element(quandles):
    for Q in quandles.values():
        for y in range(Q.n):
            assert symmetry(Q, y).images[y] == y


def test_inn_of_tait(tait):
    assert symmetry(tait, 0) == Permutation((0, 2, 1))
    G = inn(tait)
    assert G.order == 6 and is_transitive(G)
    assert is_connected(tait)


def test_trivial_quandle_is_disconnected():
    T = trivial_quandle(3)
    assert inn(T).order == 1
    assert not is_connected(T)
    assert inn_orbits(T) == [(0,), (1,), (2,)]


def test_inn_is_normal_in_aut(quandles):
    for Q in quandles.values():
        if Q.n <= 5:
            assert is_normal(inn(Q), aut(Q))


def test_aut_orders(tait):
    assert aut(tait).order == 6
    assert aut(trivial_quandle(3)).order == 6
    with pytest.raises(SizeBound):
        aut(trivial_quandle(9))


def test_orbits_match_reachability(quandles):
    for Q in quandles.values():
        assert inn_orbits(Q) == reachability_classes(Q)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_inn_of_transposition_quandle_is_symmetric(n):
    M = two_cycle_quandle(n)
    assert M.n == math.comb(n, 2)
    G = inn(M)
    assert G.order == math.factorial(n)
    assert is_transitive(G)


def test_m3_is_tait(tait):
    assert find_isomorphism(two_cycle_quandle(3), tait) is not None


# ----------------------------------------------------------------------
# coset quandles
# ----------------------------------------------------------------------
def test_coset_quandle_of_s3_is_tait(S3, tait):
    spec = CosetQuandleSpec(S3, generate([P("(1 2)", 3)]), P("(1 2)", 3))
    Q = coset_quandle(spec)
    assert Q.n == 3
    assert find_isomorphism(Q, tait) is not None


def test_identity_augmentation_gives_trivial_quandle(S3):
    H = generate([P("(1 2)", 3)])
    Q = coset_quandle(CosetQuandleSpec(S3, H, Permutation.identity(3)))
    assert Q.table() == trivial_quandle(3).table()


def test_invalid_specs(S3, S4):
    H = generate([P("(1 2)", 3)])
    with pytest.raises(InvalidSpec):
        coset_quandle(CosetQuandleSpec(S3, H, P("(0 1)", 3)))
    with pytest.raises(InvalidSpec):
        coset_quandle(CosetQuandleSpec(S3, generate([P("(0 1 2 3)", 4)]), Permutation.identity(4)))
    with pytest.raises(InvalidSpec):
        coset_quandle(CosetQuandleSpec(S4, stabilizer(S4, 3), P("(0 1)", 4)))


def test_induced_hom_onto_singleton(S3):
    flip = Permutation((1, 0))
    spec = CosetQuandleSpec(S3, generate([P("(1 2)", 3)]), P("(1 2)", 3))
    f = induced_coset_hom(spec, generate([flip]), {g: flip for g in S3.generators})
    assert f.src.n == 3 and f.dst.n == 1
    assert is_hom(f) and f.is_surjective()


def test_induced_hom_z4_to_z2():
    r, flip = Permutation((1, 2, 3, 0)), Permutation((1, 0))
    Z4 = generate([r])
    H = generate([r * r])
    f = induced_coset_hom(CosetQuandleSpec(Z4, H, r * r), generate([flip]), {r: flip})
    assert f.src.table() == trivial_quandle(2).table()
    assert f.dst.table() == trivial_quandle(2).table()
    assert f.is_bijective()


def test_induced_hom_requires_surjection(S3):
    spec = CosetQuandleSpec(S3, generate([P("(1 2)", 3)]), P("(1 2)", 3))
    with pytest.raises(NotSurjective):
        induced_coset_hom(spec, S3, {g: Permutation.identity(3) for g in S3.elements})
    with pytest.raises(NotHom):
        induced_coset_hom(spec, generate([Permutation((1, 0))]), {g: Permutation((1, 0)) for g in S3.elements})


# ----------------------------------------------------------------------
# decomposition of connected quandles
# ----------------------------------------------------------------------
def test_ehrman_data_of_tait(tait):
    data = ehrman_decompose(tait)
    assert data.G.order == 6 and data.H.order == 2
    assert data.h == symmetry(tait, 0)
    assert sorted(data.points) == [0, 1, 2]
    assert all(ehrman_roundtrip(tait, base) for base in range(3))


def test_ehrman_rejects_bad_input(tait):
    with pytest.raises(NotConnected):
        ehrman_decompose(trivial_quandle(2))
    with pytest.raises(NotConnected):
        ehrman_decompose(davis_quotient(2))
    with pytest.raises(IndexOutOfRange):
        ehrman_decompose(tait, base=3)


def test_singleton_roundtrip():
    assert ehrman_roundtrip(trivial_quandle(1))


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------
@pytest.mark.parametrize("n,count", [(1, 1), (2, 0), (3, 1), (4, 1), (5, 3), (6, 2)])
def test_connected_counts(n, count):
    found = enumerate_connected(n)
    assert len(found) == count
    assert all(is_connected(Q) for Q in found)


def test_enumeration_is_sorted_and_canonical(tait):
    found = enumerate_connected(5)
    assert [Q.table() for Q in found] == sorted(Q.table() for Q in found)
    assert find_isomorphism(enumerate_connected(3)[0], tait) is not None
    assert len(enumerate_connected(3, up_to_iso=False)) == 1


def test_every_small_connected_quandle_roundtrips():
    for n in range(1, 6):
        for Q in enumerate_connected(n):
            assert ehrman_roundtrip(Q)


def test_enumeration_bound():
    with pytest.raises(SizeBound):
        enumerate_connected(7)


def test_enumeration_cache(tmp_path):
    with CacheManager(tmp_path / "cache.db") as cache:
        first = enumerate_connected(4, cache=cache)
        assert cache.get_enumeration("connected:4:iso") is not None
        second = enumerate_connected(4, cache=cache)
    assert [Q.table() for Q in first] == [Q.table() for Q in second]


def test_conj_of_s3_splits_into_classes():
    orbits = inn_orbits(conj_quandle(symmetric_group(3)))
    assert sorted(len(o) for o in orbits) == [1, 2, 3]
