"""
Inner and automorphism groups of finite quandles, connectedness, the
coset-quandle characterization of connected quandles in both directions,
and enumeration of connected quandles of small order
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

import numpy as np

from config import AUT_BRUTE_FORCE_BOUND, ENUMERATE_ORDER_BOUND, GROUP_ORDER_BOUND
from errors import (IndexOutOfRange, InvalidSpec, InvariantFailure, NotConnected, NotHom,
                    NotSurjective, SizeBound, WellDefinednessFailure)
from permgroup import (Coset, PermGroup, Permutation, coset_lookup, extend_homomorphism, generate,
                       group_hom_failure, is_subgroup, is_transitive, orbits, right_cosets, stabilizer)
from quandle_core import (FiniteQuandle, QuandleHom, canonical_table, find_isomorphism, hom_failure,
                          quandle_from_function, validate_quandle)

logger = logging.getLogger(__name__)


# ============================================================================
# SYMMETRIES, INN, AUT
# ============================================================================
def symmetry(Q: FiniteQuandle, y: int) -> Permutation:
    """S_y : x ↦ x ◁ y"""
    if not 0 <= y < Q.n:
        raise IndexOutOfRange(f"element {y} outside 0..{Q.n - 1}", witness=(y,))
    return Permutation(tuple(int(v) for v in Q.op[:, y]))


def symmetries(Q: FiniteQuandle) -> List[Permutation]:
    return [symmetry(Q, y) for y in range(Q.n)]


def inn(Q: FiniteQuandle, bound: int = GROUP_ORDER_BOUND) -> PermGroup:
    return generate(symmetries(Q), degree=Q.n, bound=bound, name=f"Inn({Q.name})")


def aut(Q: FiniteQuandle, bound: int = AUT_BRUTE_FORCE_BOUND) -> PermGroup:
    """All bijections preserving ◁, by brute force over n! candidates"""
    if Q.n > bound:
        raise SizeBound("automorphism search", Q.n, bound)
    op = Q.op
    found = []
    for perm in itertools.permutations(range(Q.n)):
        p = np.asarray(perm, dtype=np.int64)
        if Q.n == 0 or np.array_equal(p[op], op[p[:, None], p[None, :]]):
            found.append(Permutation(perm))
    logger.debug("|Aut(%s)| = %d", Q.name, len(found))
    return PermGroup.from_elements(Q.n, found, name=f"Aut({Q.name})")


def inn_orbits(Q: FiniteQuandle) -> List[Tuple[int, ...]]:
    return orbits(PermGroup(Q.n, symmetries(Q)))


def is_connected(Q: FiniteQuandle) -> bool:
    """Single Inn-orbit; only the generators are needed, Inn itself is never closed"""
    return Q.n >= 1 and is_transitive(PermGroup(Q.n, symmetries(Q)))


def two_cycle_labels(n: int) -> List[Tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def two_cycle_quandle(n: int) -> FiniteQuandle:
    """The transpositions of Sym(n) in lexicographic order under conjugation"""
    if n < 2:
        raise ValueError(f"need n >= 2 for transpositions, got {n}")
    labels = two_cycle_labels(n)
    index = {pair: i for i, pair in enumerate(labels)}

    def conjugate(a, b):
        i, j = labels[a]
        swap = {labels[b][0]: labels[b][1], labels[b][1]: labels[b][0]}
        moved = (swap.get(i, i), swap.get(j, j))
        return index[tuple(sorted(moved))]

    return quandle_from_function(len(labels), conjugate, name=f"M{n}")


# ============================================================================
# COSET QUANDLES
# ============================================================================
@dataclass(frozen=True)
class CosetQuandleSpec:
    G: PermGroup
    H: PermGroup
    h: Permutation

    def check(self):
        if not is_subgroup(self.H, self.G):
            raise InvalidSpec("H is not a subgroup of G", witness=(repr(self.H), repr(self.G)))
        if self.h not in self.H:
            raise InvalidSpec(f"h = {self.h} is not in H", witness=(str(self.h),))
        for k in self.H.generators:
            if self.h * k != k * self.h:
                raise InvalidSpec(f"h = {self.h} does not commute with {k}", witness=(str(self.h), str(k)))


def coset_quandle(spec: CosetQuandleSpec) -> FiniteQuandle:
    """Right cosets H\\G with Hg ◁ Hk = H g k⁻¹ h k"""
    spec.check()
    cosets = right_cosets(spec.G, spec.H)
    lookup = coset_lookup(cosets)
    reps = [c.representative for c in cosets]
    reps_inv = [g.inverse() for g in reps]
    n = len(reps)
    h, h_inv = spec.h, spec.h.inverse()

    Q = quandle_from_function(n, lambda i, j: lookup[reps[i] * reps_inv[j] * h * reps[j]],
                              name="Q(G,H,h)")
    for i in range(n):
        for j in range(n):
            if lookup[reps[i] * reps_inv[j] * h_inv * reps[j]] != Q.inv_act(i, j):
                raise InvariantFailure("inverse operation does not come from h⁻¹", witness=(i, j))
    return Q


@dataclass(frozen=True)
class EhrmanData:
    quandle: FiniteQuandle
    base: int
    G: PermGroup
    H: PermGroup
    h: Permutation
    cosets: Tuple[Coset, ...]
    reps: Tuple[Permutation, ...]
    points: Tuple[int, ...]           # points[i] = base · reps[i]
    aug: Tuple[Permutation, ...]      # aug[i] = reps[i]⁻¹ h reps[i]

    @property
    def spec(self) -> CosetQuandleSpec:
        return CosetQuandleSpec(self.G, self.H, self.h)


def ehrman_decompose(Q: FiniteQuandle, base: int = 0, bound: int = GROUP_ORDER_BOUND) -> EhrmanData:
    """
    Present a connected quandle through its inner automorphism group.

    Args:
        Q: connected quandle
        base: base point q0
        bound: order bound for Inn(Q)

    Returns:
        EhrmanData with every structural invariant already verified
    """
    if not is_connected(Q):
        raise NotConnected(f"{Q!r} is not connected", witness=inn_orbits(Q))
    if not 0 <= base < Q.n:
        raise IndexOutOfRange(f"base point {base} outside 0..{Q.n - 1}", witness=(base,))

    G = inn(Q, bound)
    H = stabilizer(G, base)
    h = symmetry(Q, base)

    if h not in H:
        raise InvariantFailure(f"S_{base} does not fix {base}", witness=(str(h),))
    for k in H.elements:
        if h * k != k * h:
            raise InvariantFailure("augmentation of H is not central in H", witness=(str(h), str(k)))
    if G.order != Q.n * H.order:
        raise InvariantFailure("index of stabilizer differs from quandle size",
                               witness=(G.order, H.order, Q.n))

    cosets = tuple(right_cosets(G, H))
    reps = tuple(c.representative for c in cosets)
    points = tuple(g.images[base] for g in reps)
    if sorted(points) != list(range(Q.n)):
        raise InvariantFailure("cosets do not biject with elements", witness=points)

    lookup = coset_lookup(cosets)
    for i, g in enumerate(reps):
        for s in G.generators:
            j = lookup[g * s]
            if points[j] != s.images[points[i]]:
                raise InvariantFailure("coset bijection is not Inn-equivariant", witness=(i, str(s)))

    aug = tuple(g.inverse() * h * g for g in reps)
    for i, a in enumerate(aug):
        if a != symmetry(Q, points[i]):
            raise InvariantFailure("conjugated augmentation differs from the symmetry",
                                   witness=(i, points[i], str(a)))
    if generate(aug, degree=Q.n, bound=bound).order != G.order:
        raise InvariantFailure("augmentations do not generate Inn", witness=[str(a) for a in aug])

    logger.info("decomposed %r: |G|=%d |H|=%d h=%s", Q, G.order, H.order, h)
    return EhrmanData(Q, base, G, H, h, cosets, reps, points, aug)


def ehrman_roundtrip(Q: FiniteQuandle, base: int = 0) -> bool:
    data = ehrman_decompose(Q, base)
    return find_isomorphism(coset_quandle(data.spec), Q) is not None


# ============================================================================
# INDUCED HOMOMORPHISMS
# ============================================================================
def _full_map(G: PermGroup, target: PermGroup, phi: Mapping) -> Dict[Permutation, Permutation]:
    if all(g in phi for g in G.elements):
        full = {g: phi[g] for g in G.elements}
        failure = group_hom_failure(G, target, full)
        if failure is not None:
            raise NotHom("group map is not a homomorphism", witness=tuple(str(w) for w in failure))
        return full
    try:
        return extend_homomorphism(G, phi, target.degree)
    except WellDefinednessFailure as e:
        raise NotHom(f"generator images are inconsistent: {e}", witness=e.witness)


def image_spec(spec: CosetQuandleSpec, target: PermGroup,
               full: Mapping[Permutation, Permutation]) -> CosetQuandleSpec:
    """(Γ, φ(H), φ(h)) for a surjection φ : G -> Γ given on every element"""
    H_img = sorted({full[k] for k in spec.H.elements}, key=target.index)
    return CosetQuandleSpec(target, PermGroup.from_elements(target.degree, H_img, name="φ(H)"), full[spec.h])


def induced_coset_hom(spec: CosetQuandleSpec, target: PermGroup, phi: Mapping) -> QuandleHom:
    """
    Hg ↦ φ(H)φ(g) from Q(G,H,h) onto Q(Γ,φ(H),φ(h)).

    phi maps either every element of G or a generating set into Γ = target.
    """
    spec.check()
    full = _full_map(spec.G, target, phi)
    outside = next((v for v in full.values() if v not in target), None)
    if outside is not None:
        raise NotHom(f"{outside} is not in the target group", witness=(str(outside),))
    if len(set(full.values())) != target.order:
        raise NotSurjective(f"image has {len(set(full.values()))} of {target.order} elements",
                            witness=len(set(full.values())))

    down = image_spec(spec, target, full)
    src, dst = coset_quandle(spec), coset_quandle(down)
    up_reps = [c.representative for c in right_cosets(spec.G, spec.H)]
    down_lookup = coset_lookup(right_cosets(down.G, down.H))
    f = QuandleHom(src, dst, tuple(down_lookup[full[g]] for g in up_reps))

    failure = hom_failure(f)
    if failure is not None:
        raise NotHom("induced coset map is not a quandle homomorphism", witness=failure)
    if not f.is_surjective():
        raise NotSurjective("induced coset map is not onto", witness=f.image())
    return f


# ============================================================================
# ENUMERATION OF CONNECTED QUANDLES
# ============================================================================
def _partition_representatives(n: int) -> List[Tuple[int, ...]]:
    """One permutation fixing 0 per cycle type on the points 1..n-1"""
    reps = []

    def partitions(total, largest):
        if total == 0:
            yield ()
            return
        for part in range(min(total, largest), 0, -1):
            for rest in partitions(total - part, part):
                yield (part,) + rest

    for parts in partitions(n - 1, n - 1):
        images = list(range(n))
        start = 1
        for length in parts:
            cycle = list(range(start, start + length))
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
            start += length
        reps.append(tuple(images))
    return reps


def _cycle_type(images: Tuple[int, ...]) -> Tuple[int, ...]:
    return Permutation._trusted(images).cycle_type()


def _search_columns(n: int, first: List[Tuple[int, ...]], all_perms: List[Tuple[int, ...]]):
    """Symmetry columns S_0..S_{n-1} closed under S_{S_z(y)} = S_z S_y S_z⁻¹"""
    found = []

    def propagate(cols, inverses, pending, shape) -> bool:
        assigned = [i for i in range(n) if cols[i] is not None]
        while pending:
            a = pending.pop()
            for b in list(assigned):
                for z, y in ((a, b), (b, a)):
                    Sz, Sy, Szi = cols[z], cols[y], inverses[z]
                    target = Sz[y]
                    forced = tuple(Sz[Sy[Szi[w]]] for w in range(n))
                    current = cols[target]
                    if current is None:
                        if _cycle_type(forced) != shape:
                            return False
                        cols[target] = forced
                        inverses[target] = _invert(forced)
                        assigned.append(target)
                        pending.append(target)
                    elif current != forced:
                        return False
        return True

    def search(cols, inverses, shape):
        try:
            y = cols.index(None)
        except ValueError:
            found.append(tuple(cols))
            return
        options = [p for p in all_perms if p[y] == y and _cycle_type(p) == shape]
        for p in options:
            trial, trial_inv = list(cols), list(inverses)
            trial[y], trial_inv[y] = p, _invert(p)
            if propagate(trial, trial_inv, [y], shape):
                search(trial, trial_inv, shape)

    for s0 in first:
        cols, inverses = [None] * n, [None] * n
        cols[0], inverses[0] = s0, _invert(s0)
        shape = _cycle_type(s0)
        if propagate(cols, inverses, [0], shape):
            search(cols, inverses, shape)
    return found


def _invert(images: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = [0] * len(images)
    for i, v in enumerate(images):
        inv[v] = i
    return tuple(inv)


def enumerate_connected(n: int, up_to_iso: bool = True, bound: int = ENUMERATE_ORDER_BOUND,
                        cache=None) -> List[FiniteQuandle]:
    """
    All connected quandles of order n, sorted by table.

    With up_to_iso each class appears once, as its lexicographically least
    relabelled table. `cache` is an optional CacheManager.
    """
    if n > bound:
        raise SizeBound("connected quandle enumeration", n, bound)
    if n <= 0:
        return []

    key = f"connected:{n}:{'iso' if up_to_iso else 'labelled'}"
    if cache is not None:
        cached = cache.get_enumeration(key)
        if cached is not None:
            logger.info("loaded %d quandles of order %d from cache", len(cached), n)
            return [validate_quandle(t, name=f"C{n}_{i}") for i, t in enumerate(cached)]

    all_perms = list(itertools.permutations(range(n)))
    first = _partition_representatives(n) if up_to_iso else [p for p in all_perms if p[0] == 0]
    tables = set()
    for cols in _search_columns(n, first, all_perms):
        Q = validate_quandle([[cols[y][x] for y in range(n)] for x in range(n)])
        if not is_connected(Q):
            continue
        tables.add(canonical_table(Q) if up_to_iso else Q.table())

    ordered = sorted(tables)
    logger.info("order %d: %d connected quandles", n, len(ordered))
    if cache is not None:
        cache.put_enumeration(key, [list(map(list, t)) for t in ordered])
    return [validate_quandle(t, name=f"C{n}_{i}") for i, t in enumerate(ordered)]


if __name__ == "__main__":
    for order in range(1, 6):
        print(f"order {order}: {len(enumerate_connected(order))} connected quandles")
