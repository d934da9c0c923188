"""
Towers: finite chains Q_0 <- Q_1 <- ... <- Q_{N-1} of finite quandles (or
groups) with surjective transition homomorphisms, i.e. inverse systems
truncated at depth N. Elements of the limit are approximated by coherent
coordinate tuples.

Everything here is "verified to depth N"; nothing is evaluated lazily.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import COUNTEREXAMPLE_DEPTH_BOUND, GROUP_ORDER_BOUND, PROBE_CARRIER_BOUND
from errors import (EquivarianceFailure, IncoherentElement, IncompatibleChain, IndexOutOfRange,
                    InvariantFailure, MalformedTable, NotHom, NotPrime, NotSurjective, SizeBound,
                    TowerMismatch, WellDefinednessFailure)
from inner import (CosetQuandleSpec, coset_quandle, inn, inn_orbits, is_connected, symmetry, two_cycle_labels,
                   two_cycle_quandle)
from permgroup import (PermGroup, Permutation, block, coset_lookup, direct_sum, extend_homomorphism,
                       generate, group_hom_failure, right_cosets)
from quandle_core import (FiniteGroup, FiniteQuandle, QuandleHom, Subquandle, conj_quandle,
                          cyclic_group, davis_quotient, disjoint_union_quandle, generated_subquandle,
                          hom_failure, is_subquandle, product_quandle, tak_quandle)

logger = logging.getLogger(__name__)


# ============================================================================
# QUANDLE TOWERS
# ============================================================================
@dataclass(frozen=True, eq=False)
class QuandleTower:
    """transitions[k] maps levels[k+1] onto levels[k]"""
    levels: Tuple[FiniteQuandle, ...]
    transitions: Tuple[QuandleHom, ...]
    name: str = ""
    inclusions: Optional[Tuple[Subquandle, ...]] = None   # set on subtowers

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def top(self) -> FiniteQuandle:
        return self.levels[-1]

    def level_sizes(self) -> Tuple[int, ...]:
        return tuple(Q.n for Q in self.levels)

    def project(self, x: int, source: int, target: int) -> int:
        """Image of x ∈ levels[source] in levels[target], target <= source"""
        for k in range(source - 1, target - 1, -1):
            x = self.transitions[k].map[x]
        return x

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"QuandleTower(sizes {self.level_sizes()}{label})"


def validate_tower(T: QuandleTower) -> QuandleTower:
    if T.depth < 1:
        raise TowerMismatch("a tower needs at least one level", witness=T.depth)
    if len(T.transitions) != T.depth - 1:
        raise TowerMismatch(f"{len(T.transitions)} transitions for {T.depth} levels")
    for k, t in enumerate(T.transitions):
        if t.src != T.levels[k + 1] or t.dst != T.levels[k]:
            raise TowerMismatch(f"transition {k} does not map level {k + 1} to level {k}", witness=k)
        failure = hom_failure(t)
        if failure is not None:
            raise NotHom(f"transition {k} is not a homomorphism", witness=failure, level=k)
        if not t.is_surjective():
            missing = sorted(set(range(t.dst.n)) - set(t.map))
            raise NotSurjective(f"transition {k} misses {missing}", witness=missing, level=k)
    return T


def make_tower(levels: Sequence[FiniteQuandle], maps: Sequence[Sequence[int]],
               name: str = "") -> QuandleTower:
    """Build and validate; maps[k] lists the image in level k of each element of level k+1"""
    levels = tuple(levels)
    if len(maps) != max(len(levels) - 1, 0):
        raise TowerMismatch(f"{len(maps)} transitions for {len(levels)} levels")
    for k, m in enumerate(maps):
        for i, v in enumerate(m):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise MalformedTable(f"transition {k} entry {i} is not an integer: {v!r}", witness=(k, i))
    transitions = tuple(QuandleHom(levels[k + 1], levels[k], tuple(int(v) for v in m))
                        for k, m in enumerate(maps))
    return validate_tower(QuandleTower(levels, transitions, name))


@dataclass(frozen=True)
class TruncatedElement:
    tower: QuandleTower = field(compare=False, repr=False)
    coords: Tuple[int, ...]

    def __post_init__(self):
        T = self.tower
        if len(self.coords) != T.depth:
            raise IncoherentElement(f"{len(self.coords)} coordinates for depth {T.depth}",
                                    witness=self.coords)
        for k, x in enumerate(self.coords):
            if not 0 <= x < T.levels[k].n:
                raise IndexOutOfRange(f"coordinate {x} outside level {k}", witness=(k, x))
        for k, t in enumerate(T.transitions):
            if t.map[self.coords[k + 1]] != self.coords[k]:
                raise IncoherentElement(f"coordinates disagree between levels {k} and {k + 1}",
                                        witness=(k, self.coords))

    @classmethod
    def from_top(cls, T: QuandleTower, x: int) -> "TruncatedElement":
        if not 0 <= x < T.top.n:
            raise IndexOutOfRange(f"{x} outside the top level 0..{T.top.n - 1}", witness=(T.depth - 1, x))
        coords = [x]
        for t in reversed(T.transitions):
            coords.append(t.map[coords[-1]])
        return cls(T, tuple(reversed(coords)))


def _same_tower(a: TruncatedElement, b: TruncatedElement):
    if a.tower is not b.tower:
        raise TowerMismatch("elements belong to different towers")


def limit_op(a: TruncatedElement, b: TruncatedElement) -> TruncatedElement:
    _same_tower(a, b)
    T = a.tower
    return TruncatedElement(T, tuple(Q.act(x, y) for Q, x, y in zip(T.levels, a.coords, b.coords)))


def limit_inv_op(a: TruncatedElement, b: TruncatedElement) -> TruncatedElement:
    _same_tower(a, b)
    T = a.tower
    return TruncatedElement(T, tuple(Q.inv_act(x, y) for Q, x, y in zip(T.levels, a.coords, b.coords)))


def lift(T: QuandleTower, k: int, x: int) -> Tuple[int, ...]:
    """Preimage of x ∈ Q_k under the transition from Q_{k+1}"""
    if not 0 <= k < T.depth - 1:
        raise IndexOutOfRange(f"no transition above level {k}", witness=(k,))
    if not 0 <= x < T.levels[k].n:
        raise IndexOutOfRange(f"element {x} outside level {k}", witness=(k, x))
    return tuple(y for y, image in enumerate(T.transitions[k].map) if image == x)


def all_elements(T: QuandleTower) -> List[TruncatedElement]:
    """Coherent tuples, built upward from the bottom level, in lexicographic order"""
    partial = [(x,) for x in range(T.levels[0].n)]
    for k in range(T.depth - 1):
        partial = [p + (y,) for p in partial for y in lift(T, k, p[-1])]
    if len(partial) != T.top.n:
        raise InvariantFailure("coherent tuples do not match the top level",
                               witness=(len(partial), T.top.n))
    return [TruncatedElement(T, p) for p in partial]


@dataclass(frozen=True)
class SlimBasicOpen:
    """All coherent elements whose level-`level` coordinate is `element`"""
    level: int
    element: int


def in_open(e: TruncatedElement, U: SlimBasicOpen) -> bool:
    if not 0 <= U.level < e.tower.depth:
        raise IndexOutOfRange(f"level {U.level} outside depth {e.tower.depth}", witness=(U.level,))
    return e.coords[U.level] == U.element


def check_slim_basis(T: QuandleTower) -> bool:
    """
    Exhaustive basis check: the opens cover, and for e ∈ U ∩ V the open at
    the deeper of the two levels through e lies inside U ∩ V.
    """
    elements = all_elements(T)
    for e in elements:
        for lam in range(T.depth):
            for mu in range(T.depth):
                U = SlimBasicOpen(lam, e.coords[lam])
                V = SlimBasicOpen(mu, e.coords[mu])
                deeper = max(lam, mu)
                W = SlimBasicOpen(deeper, e.coords[deeper])
                if not in_open(e, W):
                    raise InvariantFailure("basic open misses its own point", witness=e.coords)
                for f in elements:
                    if in_open(f, W) and not (in_open(f, U) and in_open(f, V)):
                        raise InvariantFailure("basic open escapes an intersection",
                                               witness=(e.coords, lam, mu, f.coords))
    return True


# ============================================================================
# TOWER CONSTRUCTIONS
# ============================================================================
def product_tower(T: QuandleTower, S: QuandleTower) -> QuandleTower:
    """Levelwise product, truncated to the shallower depth"""
    depth = min(T.depth, S.depth)
    levels = [product_quandle(T.levels[k], S.levels[k]) for k in range(depth)]
    maps = []
    for k in range(depth - 1):
        upper, lower = S.levels[k + 1].n, S.levels[k].n
        t, s = T.transitions[k].map, S.transitions[k].map
        maps.append([t[i // upper] * lower + s[i % upper] for i in range(levels[k + 1].n)])
    return make_tower(levels, maps, name=f"{T.name}x{S.name}")


def product_of_towers(*towers: QuandleTower) -> QuandleTower:
    if not towers:
        raise ValueError("need at least one tower")
    result = towers[0]
    for T in towers[1:]:
        result = product_tower(result, T)
    return result


def disjoint_union_tower(T: QuandleTower, S: QuandleTower) -> QuandleTower:
    depth = min(T.depth, S.depth)
    levels = [disjoint_union_quandle(T.levels[k], S.levels[k]) for k in range(depth)]
    maps = []
    for k in range(depth - 1):
        upper, lower = T.levels[k + 1].n, T.levels[k].n
        t, s = T.transitions[k].map, S.transitions[k].map
        maps.append([t[i] if i < upper else s[i - upper] + lower for i in range(levels[k + 1].n)])
    U = make_tower(levels, maps, name=f"{T.name}+{S.name}")

    for e in all_elements(U):
        sides = {x < T.levels[k].n for k, x in enumerate(e.coords)}
        if len(sides) != 1:
            raise InvariantFailure("coherent element crosses summands", witness=e.coords)
    return U


def _restricted_tower(T: QuandleTower, subsets: Sequence[Iterable[int]], name: str) -> QuandleTower:
    """Tower of subquandles levelwise, relabelled, with restricted transitions"""
    subs = []
    for k, elems in enumerate(subsets):
        elems = tuple(sorted(set(elems)))
        if not is_subquandle(T.levels[k], elems):
            raise InvariantFailure(f"level {k} subset is not a subquandle", witness=elems)
        subs.append(Subquandle(T.levels[k], elems))
    levels = [s.as_quandle() for s in subs]
    maps = []
    for k in range(T.depth - 1):
        local = {x: i for i, x in enumerate(subs[k].elems)}
        t = T.transitions[k].map
        try:
            maps.append([local[t[y]] for y in subs[k + 1].elems])
        except KeyError as e:
            raise InvariantFailure(f"transition {k} leaves the subtower", witness=(k, e.args[0]))
    sub = make_tower(levels, maps, name=name)
    return QuandleTower(sub.levels, sub.transitions, sub.name, tuple(subs))


def projection_subtower(T: QuandleTower, S: Iterable[TruncatedElement]) -> QuandleTower:
    """Level k is the subquandle generated by the level-k coordinates of S"""
    S = list(S)
    for e in S:
        if e.tower is not T:
            raise TowerMismatch("element from another tower", witness=e.coords)
    subsets = [generated_subquandle(T.levels[k], {e.coords[k] for e in S}).elems for k in range(T.depth)]
    return _restricted_tower(T, subsets, name=f"closure({T.name})")


@dataclass(frozen=True)
class DensityReport:
    dense: bool
    levels: Tuple[Tuple[int, ...], ...]       # generated image per level
    level_sizes: Tuple[int, ...]

    def __bool__(self) -> bool:
        return self.dense

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dense": self.dense,
            "levels": [{"level": k, "image": list(img), "image_size": len(img), "level_size": size}
                       for k, (img, size) in enumerate(zip(self.levels, self.level_sizes))],
        }


def density_check(T: QuandleTower, S: Iterable[TruncatedElement]) -> DensityReport:
    sub = projection_subtower(T, S)
    images = tuple(s.elems for s in sub.inclusions)
    sizes = T.level_sizes()
    dense = all(len(img) == size for img, size in zip(images, sizes))
    return DensityReport(dense, images, sizes)


def constant_tower(Q: FiniteQuandle, depth: int) -> QuandleTower:
    return make_tower([Q] * depth, [list(range(Q.n))] * (depth - 1), name=f"const({Q.name})")


def davis_tower(depth: int, moduli: Optional[Sequence[int]] = None) -> QuandleTower:
    """Finite quotients Z/m ⊔ {∞, s}, reduced along moduli that divide each other (default k!)"""
    moduli = list(moduli) if moduli is not None else [math.factorial(k + 1) for k in range(depth)]
    for a, b in zip(moduli, moduli[1:]):
        if b % a:
            raise IncompatibleChain(f"modulus {a} does not divide {b}", witness=(a, b))
    levels = [davis_quotient(m) for m in moduli]
    maps = []
    for lower, upper in zip(moduli, moduli[1:]):
        maps.append([r % lower for r in range(upper)] + [lower, lower + 1])
    return make_tower(levels, maps, name="Davis")


# ============================================================================
# GROUP TOWERS
# ============================================================================
@dataclass(frozen=True, eq=False)
class GroupTower:
    """levels are PermGroup or FiniteGroup; transitions[k] maps levels[k+1] elements into levels[k]"""
    levels: Tuple[Any, ...]
    transitions: Tuple[Dict[Any, Any], ...]
    name: str = ""

    @property
    def depth(self) -> int:
        return len(self.levels)

    def orders(self) -> Tuple[int, ...]:
        return tuple(G.order for G in self.levels)

    def __repr__(self) -> str:
        return f"GroupTower(orders {self.orders()} {self.name})"


def _contains(G, g) -> bool:
    if isinstance(G, FiniteGroup):
        return isinstance(g, int) and 0 <= g < G.n
    return g in G


def validate_group_tower(GT: GroupTower) -> GroupTower:
    for k, phi in enumerate(GT.transitions):
        upper, lower = GT.levels[k + 1], GT.levels[k]
        for g in upper.elements:
            if g not in phi or not _contains(lower, phi[g]):
                raise NotHom(f"transition {k} is undefined or leaves level {k} at {g}",
                             witness=(str(g),), level=k)
        failure = group_hom_failure(upper, lower, phi)
        if failure is not None:
            raise NotHom(f"transition {k} is not a group homomorphism",
                         witness=tuple(str(w) for w in failure), level=k)
        if len(set(phi.values())) != lower.order:
            raise NotSurjective(f"transition {k} is not onto", witness=len(set(phi.values())), level=k)
    return GT


def group_limit_elements(GT: GroupTower) -> List[Tuple[Any, ...]]:
    partial = [(g,) for g in GT.levels[0].elements]
    for k in range(GT.depth - 1):
        phi = GT.transitions[k]
        by_image: Dict[Any, List[Any]] = {}
        for g in GT.levels[k + 1].elements:
            by_image.setdefault(phi[g], []).append(g)
        partial = [p + (g,) for p in partial for g in by_image.get(p[-1], [])]
    return partial


def constant_group_tower(G, depth: int) -> GroupTower:
    identity = {g: g for g in G.elements}
    return validate_group_tower(GroupTower((G,) * depth, (identity,) * (depth - 1), name=f"const({G.name})"))


def _is_prime(p: int) -> bool:
    if isinstance(p, bool) or not isinstance(p, int):
        return False
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def zp_group_tower(p: int, depth: int) -> GroupTower:
    """Z/p <- Z/p² <- ... <- Z/p^depth with reduction maps"""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime", witness=p)
    levels = tuple(cyclic_group(p ** (k + 1)) for k in range(depth))
    maps = tuple({a: a % p ** (k + 1) for a in range(p ** (k + 2))} for k in range(depth - 1))
    return validate_group_tower(GroupTower(levels, maps, name=f"Z_{p}"))


def zhat_tower(depth: int) -> GroupTower:
    """Z/1! <- Z/2! <- ... <- Z/depth!, cofinal among finite quotients of Z"""
    moduli = [math.factorial(k + 1) for k in range(depth)]
    levels = tuple(cyclic_group(m) for m in moduli)
    maps = tuple({a: a % moduli[k] for a in range(moduli[k + 1])} for k in range(depth - 1))
    return validate_group_tower(GroupTower(levels, maps, name="Zhat"))


def _cayley_tower(GT: GroupTower):
    """FiniteGroup levels and integer transition tables for any group tower"""
    levels, index = [], []
    for G in GT.levels:
        if isinstance(G, FiniteGroup):
            levels.append(G)
            index.append(None)
        else:
            levels.append(G.to_finite_group())
            index.append(G.index)
    maps = []
    for k, phi in enumerate(GT.transitions):
        upper = GT.levels[k + 1]
        to_lower = index[k] or (lambda g: g)
        maps.append([to_lower(phi[g]) for g in upper.elements])
    return levels, maps


def tak_tower(GT: GroupTower) -> QuandleTower:
    levels, maps = _cayley_tower(GT)
    return make_tower([tak_quandle(G) for G in levels], maps, name=f"Tak({GT.name})")


def conj_tower(GT: GroupTower) -> QuandleTower:
    levels, maps = _cayley_tower(GT)
    return make_tower([conj_quandle(G) for G in levels], maps, name=f"Conj({GT.name})")


def m_product_tower(depth: int) -> QuandleTower:
    """Level k is M_2 x M_3 x ... x M_{k+2}; transitions forget the last factor"""
    if depth < 1:
        raise TowerMismatch("a tower needs at least one level", witness=depth)
    levels = [two_cycle_quandle(2)]
    maps = []
    for k in range(1, depth):
        factor = two_cycle_quandle(k + 2)
        levels.append(product_quandle(levels[-1], factor))
        maps.append([i // factor.n for i in range(levels[-1].n)])
    return make_tower(levels, maps, name="prod M_n")


def coset_tower(GT: GroupTower, H_chain: Sequence[PermGroup], h_chain: Sequence[Permutation]) -> QuandleTower:
    """Levelwise coset quandles of PermGroup levels; H and h must map onto the level below"""
    if len(H_chain) != GT.depth or len(h_chain) != GT.depth:
        raise IncompatibleChain("chains must match the tower depth", witness=(len(H_chain), len(h_chain)))
    for k, phi in enumerate(GT.transitions):
        image = {phi[g] for g in H_chain[k + 1].elements}
        if image != set(H_chain[k].elements):
            raise IncompatibleChain(f"H at level {k + 1} does not map onto H at level {k}", witness=k)
        if phi[h_chain[k + 1]] != h_chain[k]:
            raise IncompatibleChain(f"h at level {k + 1} does not map to h at level {k}", witness=k)

    specs = [CosetQuandleSpec(G, H, h) for G, H, h in zip(GT.levels, H_chain, h_chain)]
    levels = [coset_quandle(spec) for spec in specs]
    maps = []
    for k, phi in enumerate(GT.transitions):
        upper = [c.representative for c in right_cosets(specs[k + 1].G, specs[k + 1].H)]
        lower = coset_lookup(right_cosets(specs[k].G, specs[k].H))
        maps.append([lower[phi[g]] for g in upper])
    return make_tower(levels, maps, name="cosets")


# ============================================================================
# INNER AUTOMORPHISM TOWERS
# ============================================================================
def inn_tower(T: QuandleTower, bound: int = GROUP_ORDER_BOUND) -> GroupTower:
    """Inn of each level; S_y maps to S_{t(y)} and the extension is checked for single-valuedness"""
    groups = [inn(Q, bound) for Q in T.levels]
    maps = []
    for k, t in enumerate(T.transitions):
        upper, lower = T.levels[k + 1], T.levels[k]
        assignment: Dict[Permutation, Permutation] = {}
        for y in range(upper.n):
            source, image = symmetry(upper, y), symmetry(lower, t.map[y])
            if assignment.setdefault(source, image) != image:
                raise WellDefinednessFailure(f"S_{y} has two induced images at level {k}",
                                             witness=(k, y))
        phi = extend_homomorphism(groups[k + 1], assignment, lower.n)
        if len(set(phi.values())) != groups[k].order:
            raise NotSurjective(f"induced map onto Inn of level {k} is not onto", level=k,
                                witness=len(set(phi.values())))
        maps.append(phi)
    logger.info("Inn tower orders %s", [G.order for G in groups])
    return validate_group_tower(GroupTower(tuple(groups), tuple(maps), name=f"Inn({T.name})"))


def levelwise_action_check(T: QuandleTower, GT: Optional[GroupTower] = None) -> bool:
    """t_k(x·g) = t_k(x)·φ_k(g) for every level, group element and point"""
    GT = GT if GT is not None else inn_tower(T)
    for k, t in enumerate(T.transitions):
        phi = GT.transitions[k]
        for g in GT.levels[k + 1].elements:
            induced = phi[g]
            for x in range(T.levels[k + 1].n):
                if t.map[g.images[x]] != induced.images[t.map[x]]:
                    raise EquivarianceFailure(f"projection from level {k + 1} is not equivariant",
                                              witness=(k, str(g), x))
    return True


def orbit_subtower(T: QuandleTower, C: Iterable[TruncatedElement]) -> QuandleTower:
    """Level k is the union of the Inn(Q_k)-orbits of the level-k coordinates of C"""
    C = list(C)
    subsets = []
    for k, Q in enumerate(T.levels):
        seeds = {e.coords[k] for e in C}
        subsets.append(sorted(x for orbit in inn_orbits(Q) if seeds.intersection(orbit) for x in orbit))
    return _restricted_tower(T, subsets, name=f"orbits({T.name})")


def levelwise_connected(T: QuandleTower) -> bool:
    """Finite certificate only: each level is connected"""
    return all(is_connected(Q) for Q in T.levels)


# ============================================================================
# PRODUCT OF TRANSPOSITION QUANDLES: THE INN PROBE
# ============================================================================
def ell_cycle(n: int) -> Permutation:
    """The 2⌊n/2⌋-cycle (0 1 ... 2⌊n/2⌋-1) in Sym(n)"""
    m = 2 * (n // 2)
    return Permutation.from_cycles([tuple(range(m))], n)


@dataclass
class ProbeLevel:
    level: int
    factors: Tuple[int, ...]              # n for each Sym(n) block
    inn_order: int
    parity_subgroup_order: int
    method: str                           # exhaustive | certificate
    matches_parity_subgroup: bool
    ell_member: bool
    carrier_size: int
    carrier_inn_order: Optional[int] = None
    carrier_matches: Optional[bool] = None   # None above the carrier bound

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__, factors=list(self.factors))


@dataclass
class ProbeReport:
    depth: int
    levels: List[ProbeLevel]
    ell: List[str]
    min_transpositions: List[int]
    ell_coherent: bool
    transitions_onto: bool = True

    @property
    def unbounded(self) -> bool:
        """Values follow 2⌊n/2⌋ - 1 and grow at every even n"""
        seq = self.min_transpositions
        follows = all(v == 2 * (n // 2) - 1 for n, v in zip(itertools.count(2), seq))
        return follows and all(b > a for a, b in zip(seq[::2], seq[2::2]))

    @property
    def ok(self) -> bool:
        return (self.ell_coherent and self.transitions_onto and self.unbounded
                and all(lv.matches_parity_subgroup and lv.ell_member and lv.carrier_matches is not False
                        for lv in self.levels))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "levels": [lv.to_dict() for lv in self.levels],
            "ell": self.ell,
            "min_transpositions": self.min_transpositions,
            "ell_coherent": self.ell_coherent,
            "transitions_onto": self.transitions_onto,
            "unbounded": self.unbounded,
            "ok": self.ok,
        }


def _transpositions(n: int) -> List[Permutation]:
    return [Permutation.transposition(i, j, n) for i, j in itertools.combinations(range(n), 2)]


def _parity_subgroup(factors: Sequence[int]) -> set:
    """Tuples in ∏Sym(n) whose coordinates are all even or all odd"""
    blocks = [[Permutation(p) for p in itertools.permutations(range(n))] for n in factors]
    found = set()
    for combo in itertools.product(*blocks):
        if len({p.parity() for p in combo}) == 1:
            found.add(direct_sum(combo))
    return found


def carrier_action(factors: Sequence[int], sigma: Permutation) -> Permutation:
    """
    The permutation a block permutation of Sym(2) x ... x Sym(n) induces on the
    carrier M_2 x ... x M_n, in the index order of m_product_tower's levels.
    """
    per_factor, offset = [], 0
    for n in factors:
        labels = two_cycle_labels(n)
        index = {pair: i for i, pair in enumerate(labels)}
        local = block(sigma, offset, n).images
        per_factor.append([index[tuple(sorted((local[i], local[j])))] for i, j in labels])
        offset += n
    sizes = [len(f) for f in per_factor]
    images = []
    for coords in itertools.product(*(range(s) for s in sizes)):
        target = 0
        for f, c, s in zip(per_factor, coords, sizes):
            target = target * s + f[c]
        images.append(target)
    return Permutation(tuple(images))


def _alternating_certificate(n: int, bound: int) -> bool:
    """Products (0 1)·τ over transpositions τ generate a group of order n!/2"""
    if n < 2:
        return True
    base = Permutation.transposition(0, 1, n)
    products = [base * tau for tau in _transpositions(n)]
    return generate(products, degree=n, bound=bound).order == math.factorial(n) // 2


def _carrier_inn_tower(depth: int, bound: int) -> Optional[GroupTower]:
    try:
        return inn_tower(m_product_tower(depth), bound)
    except (NotHom, NotSurjective, WellDefinednessFailure) as e:
        logger.warning("Inn tower of the carrier failed: %s", e)
        return None


def counterexample_probe(depth: int, bound: int = GROUP_ORDER_BOUND,
                         carrier_bound: int = PROBE_CARRIER_BOUND) -> ProbeReport:
    """
    Inner automorphisms of M_2 x ... x M_{k+2}, realized inside
    Sym(2) x ... x Sym(k+2), against the subgroup of same-parity tuples,
    together with the coherent tuple of even-length cycles ℓ_n.

    Levels whose carrier has at most carrier_bound points are also computed
    on the carrier itself: Inn of that level of m_product_tower must be the
    image of the same-parity subgroup, and its transitions must be onto.
    """
    if not 1 <= depth <= COUNTEREXAMPLE_DEPTH_BOUND:
        raise SizeBound("counterexample probe depth", depth, COUNTEREXAMPLE_DEPTH_BOUND)

    carrier_sizes = [math.prod(math.comb(n, 2) for n in range(2, k + 3)) for k in range(depth)]
    carrier_depth = sum(1 for size in carrier_sizes if size <= carrier_bound)
    carrier_inn = _carrier_inn_tower(carrier_depth, bound) if carrier_depth else None
    transitions_onto = carrier_depth == 0 or carrier_inn is not None

    levels = []
    previous_elements = None
    ell_coherent = True
    for k in range(depth):
        factors = tuple(range(2, k + 3))
        parity_order = 2 * math.prod(math.factorial(n) // 2 for n in factors)
        ell = direct_sum([ell_cycle(n) for n in factors])
        parity = None

        if math.prod(math.factorial(n) for n in factors) <= bound:
            method = "exhaustive"
            gens = [direct_sum(combo) for combo in itertools.product(*(_transpositions(n) for n in factors))]
            G = generate(gens, degree=sum(factors), bound=bound, name=f"Inn level {k}")
            elements = set(G.elements)
            parity = _parity_subgroup(factors)
            matches = elements == parity
            inn_order = G.order
            member = ell in elements
            if previous_elements is not None:
                width = sum(factors[:-1])
                dropped = {Permutation(g.images[:width]) for g in elements}
                if dropped != previous_elements:
                    transitions_onto = False
            previous_elements = elements
        else:
            method = "certificate"
            matches = all(_alternating_certificate(n, bound) for n in factors)
            inn_order = parity_order if matches else -1
            member = len({ell_cycle(n).parity() for n in factors}) == 1
            previous_elements = None

        if Permutation(ell.images[:sum(factors[:-1])]) != direct_sum([ell_cycle(n) for n in factors[:-1]]):
            ell_coherent = False

        carrier_order = carrier_matches = None
        if k < carrier_depth:
            if carrier_inn is None:
                carrier_matches = False
            else:
                level_group = carrier_inn.levels[k]
                carrier_order = level_group.order
                parity = parity if parity is not None else _parity_subgroup(factors)
                induced = {carrier_action(factors, sigma) for sigma in parity}
                carrier_matches = set(level_group.elements) == induced

        levels.append(ProbeLevel(k, factors, inn_order, parity_order, method, matches, member,
                                 carrier_sizes[k], carrier_order, carrier_matches))
        logger.info("level %d: |Inn| = %d (%s), same-parity order %d", k, inn_order, method, parity_order)

    top_factors = range(2, depth + 2)
    return ProbeReport(
        depth=depth,
        levels=levels,
        ell=[str(ell_cycle(n)) for n in top_factors],
        min_transpositions=[ell_cycle(n).min_transpositions() for n in top_factors],
        ell_coherent=ell_coherent,
        transitions_onto=transitions_onto,
    )


if __name__ == "__main__":
    report = counterexample_probe(3)
    print(report.to_dict())
