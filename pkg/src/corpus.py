"""
Standard objects the proposition suite and the tests iterate over: every
group of order at most 12, abelian groups up to 16, permutation groups for
coset quandles, small quandles and towers, and seeded samplers for coset
specs and surjections.
"""
import random
from typing import Dict, List, Tuple

from inner import CosetQuandleSpec, enumerate_connected, two_cycle_quandle
from permgroup import PermGroup, Permutation, block, center, direct_sum, generate, symmetric_perm_group
from quandle_core import (TAIT_TABLE, FiniteGroup, FiniteQuandle, core_quandle, cyclic_group,
                          davis_quotient, direct_product_group, disjoint_union_quandle, group_from_elements,
                          tak_quandle, trivial_quandle, validate_quandle)
from tower import (QuandleTower, coset_tower, constant_group_tower, constant_tower, davis_tower,
                   disjoint_union_tower, m_product_tower, product_tower, tak_tower, zhat_tower, zp_group_tower)


def tait() -> FiniteQuandle:
    return validate_quandle(TAIT_TABLE, name="Tait")


# ============================================================================
# GROUPS
# ============================================================================
def dihedral_perm_group(n: int) -> PermGroup:
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return generate([rotation, reflection], degree=n, name=f"D{n}")


def alternating_perm_group(n: int) -> PermGroup:
    gens = [Permutation.from_cycles([(0, i, i + 1)], n) for i in range(1, n - 1)]
    return generate(gens, degree=n, name=f"A{n}")


def _quaternion_group() -> FiniteGroup:
    def multiply(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    units = [tuple(s if i == k else 0 for i in range(4)) for k in range(4) for s in (1, -1)]
    return group_from_elements(units, multiply, name="Q8")


def _dicyclic12() -> FiniteGroup:
    elements = [(a, b) for a in range(3) for b in range(4)]
    return group_from_elements(
        elements, lambda x, y: ((x[0] + (-1) ** x[1] * y[0]) % 3, (x[1] + y[1]) % 4), name="Dic3")


def small_groups(max_order: int = 12) -> Dict[str, FiniteGroup]:
    """One representative of each isomorphism class of group of order <= 12"""
    Z = cyclic_group
    groups = {f"Z{n}": Z(n) for n in range(1, 13)}
    groups.update({
        "Z2xZ2": direct_product_group(Z(2), Z(2)),
        "Z2xZ4": direct_product_group(Z(2), Z(4)),
        "Z2xZ2xZ2": direct_product_group(direct_product_group(Z(2), Z(2)), Z(2)),
        "Z3xZ3": direct_product_group(Z(3), Z(3)),
        "Z2xZ6": direct_product_group(Z(2), Z(6)),
        "S3": symmetric_perm_group(3).to_finite_group(),
        "D4": dihedral_perm_group(4).to_finite_group(),
        "Q8": _quaternion_group(),
        "D5": dihedral_perm_group(5).to_finite_group(),
        "D6": dihedral_perm_group(6).to_finite_group(),
        "A4": alternating_perm_group(4).to_finite_group(),
        "Dic3": _dicyclic12(),
    })
    return {name: G for name, G in groups.items() if G.order <= max_order}


def abelian_groups(max_order: int = 16) -> Dict[str, FiniteGroup]:
    Z = cyclic_group
    groups = {f"Z{n}": Z(n) for n in range(1, max_order + 1)}
    products = {
        "Z2xZ2": (2, 2), "Z2xZ4": (2, 4), "Z3xZ3": (3, 3), "Z2xZ6": (2, 6),
        "Z2xZ8": (2, 8), "Z4xZ4": (4, 4), "Z2xZ2xZ2": (2, 2, 2), "Z2xZ2xZ4": (2, 2, 4),
        "Z2xZ2xZ2xZ2": (2, 2, 2, 2),
    }
    for name, factors in products.items():
        G = Z(factors[0])
        for m in factors[1:]:
            G = direct_product_group(G, Z(m))
        if G.order <= max_order:
            groups[name] = G
    return groups


def perm_group_corpus(max_order: int = 48) -> Dict[str, PermGroup]:
    S2, S3, S4 = symmetric_perm_group(2), symmetric_perm_group(3), symmetric_perm_group(4)
    groups = {
        "S3": S3,
        "S4": S4,
        "A4": alternating_perm_group(4),
        "D4": dihedral_perm_group(4),
        "D5": dihedral_perm_group(5),
        "D6": dihedral_perm_group(6),
        "Z6": generate([Permutation(tuple((i + 1) % 6 for i in range(6)))], name="Z6"),
        "S3xS2": direct_product_perm(S3, S2),
        "S4xS2": direct_product_perm(S4, S2),
    }
    return {name: G for name, G in groups.items() if G.order <= max_order}


def direct_product_perm(G: PermGroup, H: PermGroup) -> PermGroup:
    """G x H acting on disjoint point blocks"""
    eG, eH = G.identity, H.identity
    gens = [direct_sum([g, eH]) for g in G.generators] + [direct_sum([eG, h]) for h in H.generators]
    return generate(gens, degree=G.degree + H.degree, name=f"{G.name}x{H.name}")


# ============================================================================
# SAMPLERS
# ============================================================================
def random_coset_spec(rng: random.Random, G: PermGroup) -> CosetQuandleSpec:
    """H generated by up to two random elements, h random in Z(H)"""
    picks = [rng.choice(G.elements) for _ in range(rng.randint(0, 2))]
    H = generate(picks, degree=G.degree)
    Z = center(H)
    return CosetQuandleSpec(G, H, rng.choice(Z.elements))


def sample_coset_specs(seed: int, count: int, max_order: int = 48) -> List[Tuple[str, CosetQuandleSpec]]:
    rng = random.Random(seed)
    groups = perm_group_corpus(max_order)
    names = sorted(groups)
    return [(name, random_coset_spec(rng, groups[name])) for name in (rng.choice(names) for _ in range(count))]


def _pairing_action(g: Permutation) -> Permutation:
    """S4 acting on its three pairings {{0,1},{2,3}}, {{0,2},{1,3}}, {{0,3},{1,2}}"""
    pairings = [frozenset({frozenset({0, 1}), frozenset({2, 3})}),
                frozenset({frozenset({0, 2}), frozenset({1, 3})}),
                frozenset({frozenset({0, 3}), frozenset({1, 2})})]
    index = {p: i for i, p in enumerate(pairings)}
    moved = [frozenset(frozenset(g.images[x] for x in pair) for pair in p) for p in pairings]
    return Permutation(tuple(index[m] for m in moved))


def surjection_corpus() -> List[Tuple[str, PermGroup, PermGroup, Dict[Permutation, Permutation]]]:
    """(name, G, Γ, φ on every element) for surjections between groups of order <= 24"""
    S2, S3, S4 = symmetric_perm_group(2), symmetric_perm_group(3), symmetric_perm_group(4)
    flip, e2 = Permutation((1, 0)), Permutation((0, 1))
    found = []
    for G in (S3, S4):
        found.append((f"sign {G.name}", G, S2, {g: flip if g.parity() == "odd" else e2 for g in G.elements}))
    found.append(("S4 on pairings", S4, S3, {g: _pairing_action(g) for g in S4.elements}))
    S3xS2 = direct_product_perm(S3, S2)
    found.append(("project S3xS2", S3xS2, S3, {g: block(g, 0, 3) for g in S3xS2.elements}))
    D4 = dihedral_perm_group(4)
    found.append(("identity D4", D4, D4, {g: g for g in D4.elements}))
    Z4 = generate([Permutation((1, 2, 3, 0))], name="Z4")
    Z2 = generate([flip], name="Z2")
    found.append(("Z4 mod 2", Z4, Z2, {g: flip if g.images[0] % 2 else e2 for g in Z4.elements}))
    return found


def sample_induced_instances(seed: int, count: int):
    """(name, spec, Γ, φ) with random specs on the domains of surjection_corpus"""
    rng = random.Random(seed)
    maps = surjection_corpus()
    out = []
    for _ in range(count):
        name, G, target, phi = rng.choice(maps)
        out.append((name, random_coset_spec(rng, G), target, phi))
    return out


# ============================================================================
# QUANDLES AND TOWERS
# ============================================================================
def small_quandles(max_n: int = 5) -> Dict[str, FiniteQuandle]:
    Q = {f"T{n}": trivial_quandle(n) for n in range(1, max_n + 1)}
    Q["Tait"] = tait()
    Q["M3"] = two_cycle_quandle(3)
    Q["Tak(Z4)"] = tak_quandle(cyclic_group(4))
    Q["Tak(Z5)"] = tak_quandle(cyclic_group(5))
    Q["Core(Z4)"] = core_quandle(cyclic_group(4))
    for m in (1, 2, 3):
        Q[f"Davis({m})"] = davis_quotient(m)
    Q["Tait+T1"] = disjoint_union_quandle(tait(), trivial_quandle(1))
    Q["Tait+T2"] = disjoint_union_quandle(tait(), trivial_quandle(2))
    for n in range(4, max_n + 1):
        for i, C in enumerate(enumerate_connected(n)):
            Q[f"C{n}_{i}"] = C
    return {name: q for name, q in Q.items() if q.n <= max_n}


def tower_corpus() -> Dict[str, QuandleTower]:
    S3 = symmetric_perm_group(3)
    H = generate([Permutation((0, 2, 1))], degree=3)
    h = Permutation((0, 2, 1))
    return {
        "const Tait": constant_tower(tait(), 3),
        "Tak Z2": tak_tower(zp_group_tower(2, 3)),
        "Tak Z3": tak_tower(zp_group_tower(3, 2)),
        "Tak Zhat": tak_tower(zhat_tower(3)),
        "prod M_n": m_product_tower(3),
        "Davis": davis_tower(3),
        "Tait x Tak Z3": product_tower(constant_tower(tait(), 2), tak_tower(zp_group_tower(3, 2))),
        "Tait + T1": disjoint_union_tower(constant_tower(tait(), 3), constant_tower(trivial_quandle(1), 3)),
        "cosets S3": coset_tower(constant_group_tower(S3, 3), [H] * 3, [h] * 3),
    }
