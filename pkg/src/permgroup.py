"""
Small-scale permutation group engine

Permutations act on the right: (a * b)(x) = b(a(x)), i.e. apply a, then b.
Groups are enumerated exhaustively by breadth-first closure over their
generators, guarded by an order bound.
"""
import logging
import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from config import GROUP_ORDER_BOUND
from errors import (DegreeMismatch, FormatError, IndexOutOfRange, MalformedTable, NotHom,
                    NotSubgroup, OrderBoundExceeded, WellDefinednessFailure)
from quandle_core import FiniteGroup, validate_group

logger = logging.getLogger(__name__)

_CYCLE = re.compile(r"\(([^()]*)\)")


# ============================================================================
# PERMUTATIONS
# ============================================================================
@dataclass(frozen=True, order=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise MalformedTable(f"{list(images)} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def transposition(cls, i: int, j: int, degree: int) -> "Permutation":
        images = list(range(degree))
        images[i], images[j] = j, i
        return cls._trusted(tuple(images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise IndexOutOfRange(f"point {point} outside 0..{degree - 1}", witness=(point,))
                if point in seen:
                    raise MalformedTable(f"point {point} appears twice in cycle notation", witness=(point,))
                seen.add(point)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a] = b
        return cls._trusted(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Cycle notation such as `(0 1)(2 4)`; `()` is the identity"""
        stripped = text.replace(" ", "")
        if not stripped or _CYCLE.sub("", text).strip():
            raise FormatError(f"not in cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE.findall(text):
            parts = body.replace(",", " ").split()
            try:
                cycles.append(tuple(int(p) for p in parts))
            except ValueError:
                raise FormatError(f"non-integer point in {text!r}")
        try:
            return cls.from_cycles(cycles, degree)
        except (IndexOutOfRange, MalformedTable) as e:
            raise FormatError(f"bad permutation {text!r}: {e}", witness=e.witness)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle, x = [], start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self.images[x]
            if include_fixed or len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.degree else 1

    def min_transpositions(self) -> int:
        return self.degree - len(self.cycles(include_fixed=True))

    def parity(self) -> str:
        return "odd" if self.min_transpositions() % 2 else "even"

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """a then b"""
    if a.degree != b.degree:
        raise DegreeMismatch(f"cannot compose degree {a.degree} with degree {b.degree}",
                             witness=(a.degree, b.degree))
    return Permutation._trusted(tuple(map(b.images.__getitem__, a.images)))


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def parity(a: Permutation) -> str:
    return a.parity()


def min_transpositions(a: Permutation) -> int:
    """degree minus number of cycles, fixed points included"""
    return a.min_transpositions()


def direct_sum(parts: Sequence[Permutation]) -> Permutation:
    """Block permutation acting on consecutive point ranges, one per part"""
    images, offset = [], 0
    for p in parts:
        images.extend(v + offset for v in p.images)
        offset += p.degree
    return Permutation._trusted(tuple(images))


def block(p: Permutation, offset: int, size: int) -> Permutation:
    """Restriction of a block permutation to points offset..offset+size-1"""
    return Permutation(tuple(v - offset for v in p.images[offset:offset + size]))


# ============================================================================
# PERMUTATION GROUPS
# ============================================================================
class PermGroup:
    """
    Group generated by permutations of a common degree. The element list is
    computed on first access, in breadth-first discovery order from the
    identity with generators tried in sorted order.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (),
                 bound: int = GROUP_ORDER_BOUND, name: str = ""):
        gens = sorted(set(generators))
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}",
                                     witness=(str(g),))
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(g for g in gens if not g.is_identity())
        self.bound = bound
        self.name = name
        self._elements: Optional[Tuple[Permutation, ...]] = None
        self._index: Optional[Dict[Permutation, int]] = None

    @classmethod
    def from_elements(cls, degree: int, elements: Sequence[Permutation],
                      bound: int = GROUP_ORDER_BOUND, name: str = "") -> "PermGroup":
        """Wrap an already-closed element list; the identity is moved to the front"""
        e = Permutation.identity(degree)
        ordered = [e] + [g for g in elements if g != e]
        group = cls(degree, ordered, bound, name)
        group._elements = tuple(ordered)
        group._index = {g: i for i, g in enumerate(ordered)}
        return group

    def _close(self):
        e = Permutation.identity(self.degree)
        elements, index = [e], {e: 0}
        queue = deque([e])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = Permutation._trusted(tuple(map(s.images.__getitem__, g.images)))
                if h not in index:
                    if len(elements) >= self.bound:
                        raise OrderBoundExceeded(
                            f"group {self.name or ''} passes order bound {self.bound}",
                            witness=len(elements), bound=self.bound)
                    index[h] = len(elements)
                    elements.append(h)
                    queue.append(h)
        self._elements = tuple(elements)
        self._index = index
        logger.debug("closed group %s of order %d on %d points", self.name, len(elements), self.degree)

    @property
    def elements(self) -> Tuple[Permutation, ...]:
        if self._elements is None:
            self._close()
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def index(self, g: Permutation) -> int:
        self.elements
        return self._index[g]

    def multiply(self, a: Permutation, b: Permutation) -> Permutation:
        return a * b

    def inverse(self, a: Permutation) -> Permutation:
        return a.inverse()

    def __contains__(self, g) -> bool:
        self.elements
        return g in self._index

    def __iter__(self):
        return iter(self.elements)

    def is_abelian(self) -> bool:
        return all(a * b == b * a for i, a in enumerate(self.generators) for b in self.generators[i + 1:])

    def to_finite_group(self) -> FiniteGroup:
        """Cayley table indexed by discovery order"""
        elements = self.elements
        idx = self._index
        table = [[idx[a * b] for b in elements] for a in elements]
        return validate_group(table, identity=0, name=self.name)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        order = len(self._elements) if self._elements is not None else "?"
        return f"PermGroup(degree {self.degree}, order {order}{label})"


def generate(gens: Iterable[Permutation], degree: Optional[int] = None,
             bound: int = GROUP_ORDER_BOUND, name: str = "") -> PermGroup:
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree is required when there are no generators")
        degree = gens[0].degree
    group = PermGroup(degree, gens, bound, name)
    group.elements
    return group


def symmetric_perm_group(n: int, bound: int = GROUP_ORDER_BOUND) -> PermGroup:
    gens = [Permutation.transposition(0, i, n) for i in range(1, n)]
    return generate(gens, degree=n, bound=bound, name=f"S{n}")


def orbit(G: PermGroup, x: int) -> Tuple[int, ...]:
    if not 0 <= x < G.degree:
        raise IndexOutOfRange(f"point {x} outside 0..{G.degree - 1}", witness=(x,))
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for s in G.generators:
            z = s.images[y]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return tuple(sorted(seen))


def orbits(G: PermGroup) -> List[Tuple[int, ...]]:
    found, covered = [], set()
    for x in range(G.degree):
        if x not in covered:
            o = orbit(G, x)
            covered.update(o)
            found.append(o)
    return found


def is_transitive(G: PermGroup) -> bool:
    return G.degree >= 1 and len(orbit(G, 0)) == G.degree


def stabilizer(G: PermGroup, x: int) -> PermGroup:
    if not 0 <= x < G.degree:
        raise IndexOutOfRange(f"point {x} outside 0..{G.degree - 1}", witness=(x,))
    return PermGroup.from_elements(G.degree, [g for g in G.elements if g.images[x] == x],
                                   G.bound, name=f"Stab({x})")


def center(G: PermGroup) -> PermGroup:
    central = [g for g in G.elements if all(g * s == s * g for s in G.generators)]
    return PermGroup.from_elements(G.degree, central, G.bound, name=f"Z({G.name})")


def is_subgroup(H: PermGroup, G: PermGroup) -> bool:
    return H.degree == G.degree and all(h in G for h in H.elements)


def is_normal(N: PermGroup, G: PermGroup) -> bool:
    if not is_subgroup(N, G):
        return False
    return all(g.inverse() * n * g in N for g in G.generators for n in N.generators)


@dataclass(frozen=True)
class Coset:
    """Right coset H·representative"""
    representative: Permutation
    elements: frozenset

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def right_cosets(G: PermGroup, H: PermGroup) -> List[Coset]:
    """Partition of G into classes Hg; each representative is the first member in G's order"""
    if not is_subgroup(H, G):
        raise NotSubgroup(f"{H!r} is not a subgroup of {G!r}",
                          witness=next((str(h) for h in H.elements if h not in G), None))
    assigned = set()
    cosets = []
    for g in G.elements:
        if g in assigned:
            continue
        members = frozenset(h * g for h in H.elements)
        assigned.update(members)
        cosets.append(Coset(g, members))
    return cosets


def coset_lookup(cosets: Sequence[Coset]) -> Dict[Permutation, int]:
    return {g: i for i, c in enumerate(cosets) for g in c.elements}


def regular_representation(G: FiniteGroup, generators: Optional[Iterable[int]] = None,
                           bound: int = GROUP_ORDER_BOUND) -> PermGroup:
    """Right multiplication x ↦ x·g on the Cayley table's index set"""
    gens = G.generators if generators is None else tuple(generators)
    perms = [Permutation(tuple(int(v) for v in G.mul[:, g])) for g in gens]
    return generate(perms, degree=G.n, bound=bound, name=f"reg({G.name})")


# ============================================================================
# HOMOMORPHISMS
# ============================================================================
def extend_homomorphism(G: PermGroup, generator_images: Mapping[Permutation, Permutation],
                        target_degree: int) -> Dict[Permutation, Permutation]:
    """
    Extend an assignment on generating elements to all of G.

    Args:
        G: domain group
        generator_images: images of elements generating G
        target_degree: degree of the codomain permutations

    Returns:
        Dictionary from every element of G to its image

    Raises WellDefinednessFailure when two words for one element disagree.
    """
    pairs = sorted(generator_images.items())
    for s, _ in pairs:
        if s not in G:
            raise NotHom(f"{s} is not an element of the domain", witness=(str(s),))
    e = G.identity
    phi = {e: Permutation.identity(target_degree)}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        image = phi[g]
        for s, t in pairs:
            h = g * s
            mapped = image * t
            seen = phi.get(h)
            if seen is None:
                phi[h] = mapped
                queue.append(h)
            elif seen != mapped:
                raise WellDefinednessFailure(
                    f"element {h} has two images {seen} and {mapped}",
                    witness=(str(h), str(seen), str(mapped)))
    if len(phi) != G.order:
        raise NotHom(f"assigned elements generate {len(phi)} of {G.order} elements",
                     witness=len(phi))
    return phi


def group_hom_failure(G, H, phi: Mapping) -> Optional[tuple]:
    """
    First (g, s) with phi(g·s) != phi(g)·phi(s) over all g and generators s
    of G, or ('identity',) when phi(id) is not the identity of H. Both groups
    may be PermGroup or FiniteGroup.
    """
    if phi[G.identity] != H.identity:
        return ("identity",)
    for g in G.elements:
        for s in G.generators:
            if phi[G.multiply(g, s)] != H.multiply(phi[g], phi[s]):
                return (g, s)
    return None


if __name__ == "__main__":
    S3 = symmetric_perm_group(3)
    print(f"{S3!r}: {[str(g) for g in S3.elements]}")
    print(f"stabilizer of 0: {[str(g) for g in stabilizer(S3, 0).elements]}")
