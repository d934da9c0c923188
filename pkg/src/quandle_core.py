"""
Finite quandles as validated operation tables, the standard constructions
(trivial, Conj, Tak, Core, product, disjoint union, Davis quotients),
homomorphisms, isomorphism search and the subquandle lattice.

Elements are always 0..n-1. Tables are numpy integer arrays with
op[x, y] = x ◁ y; inv_op is materialized at validation.
"""
import itertools
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import SUBQUANDLE_ENUM_BOUND
from errors import AxiomViolation, IndexOutOfRange, MalformedTable, NotAbelian, SizeBound

logger = logging.getLogger(__name__)

# 0-indexed form of the classical three-element table (rows 1 3 2 / 3 2 1 / 2 1 3)
TAIT_TABLE = ((0, 2, 1), (2, 1, 0), (1, 0, 2))


def _as_table(table) -> np.ndarray:
    """Coerce a nested sequence into a square int64 array with in-range entries"""
    if isinstance(table, np.ndarray) and table.ndim == 2 and np.issubdtype(table.dtype, np.integer):
        n = table.shape[0]
        if table.shape != (n, n):
            raise MalformedTable(f"table shape {table.shape} is not square")
        bad = np.argwhere((table < 0) | (table >= n))
        if bad.size:
            x, y = (int(v) for v in bad[0])
            raise MalformedTable(f"entry ({x}, {y}) = {table[x, y]} outside 0..{n - 1}", witness=(x, y))
        return np.array(table, dtype=np.int64)
    if not isinstance(table, (list, tuple, np.ndarray)):
        raise MalformedTable(f"table must be a list of rows, got {type(table).__name__}")
    for x, row in enumerate(table):
        if not isinstance(row, (list, tuple, np.ndarray)):
            raise MalformedTable(f"row {x} is not a list: {row!r}", witness=(x,))
    rows = [list(row) for row in table]
    n = len(rows)
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    for x, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {x} has {len(row)} entries, expected {n}", witness=(x,))
        for y, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise MalformedTable(f"entry ({x}, {y}) is not an integer: {value!r}", witness=(x, y))
            if not 0 <= value < n:
                raise MalformedTable(f"entry ({x}, {y}) = {value} outside 0..{n - 1}", witness=(x, y))
    return np.array(rows, dtype=np.int64)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


# ============================================================================
# FINITE QUANDLES
# ============================================================================
@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    """
    Validated operation table. Build through validate_quandle or one of the
    constructors below, never directly.
    """
    op: np.ndarray
    inv_op: np.ndarray
    name: str = ""

    @property
    def n(self) -> int:
        return int(self.op.shape[0])

    @property
    def elements(self) -> range:
        return range(self.n)

    def act(self, x: int, y: int) -> int:
        return int(self.op[x, y])

    def inv_act(self, x: int, y: int) -> int:
        return int(self.inv_op[x, y])

    def table(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.op)

    def is_kei(self) -> bool:
        if self.n == 0:
            return True
        idx = np.arange(self.n)
        return bool(np.array_equal(self.op[self.op, idx[None, :]], np.broadcast_to(idx[:, None], self.op.shape)))

    def display_rows(self, one_indexed: bool = True) -> List[List[int]]:
        shift = 1 if one_indexed else 0
        return [[int(v) + shift for v in row] for row in self.op]

    def display_table(self, one_indexed: bool = True) -> str:
        shift = 1 if one_indexed else 0
        width = max(len(str(self.n - 1 + shift)), 1)
        header = " " * width + " | " + " ".join(str(y + shift).rjust(width) for y in range(self.n))
        lines = [header, "-" * len(header)]
        for x, row in enumerate(self.display_rows(one_indexed)):
            lines.append(str(x + shift).rjust(width) + " | " + " ".join(str(v).rjust(width) for v in row))
        return "\n".join(lines)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteQuandle) and np.array_equal(self.op, other.op)

    def __hash__(self) -> int:
        return hash((self.n, self.op.tobytes()))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"FiniteQuandle({self.n} elements{label})"


def _check_axioms(op: np.ndarray, idempotent: bool = True):
    """Raise AxiomViolation for the first failing cell, checking Q1, then Q2, then Q3"""
    n = op.shape[0]
    idx = np.arange(n)

    if idempotent:
        bad = np.flatnonzero(op[idx, idx] != idx)
        if bad.size:
            x = int(bad[0])
            raise AxiomViolation("Q1", (x, x))

    for y in range(n):
        seen = set()
        for x, value in enumerate(op[:, y].tolist()):
            if value in seen:
                raise AxiomViolation("Q2", (x, y))
            seen.add(value)

    for z in range(n):
        col = op[:, z]
        lhs = col[op]                          # (x ◁ y) ◁ z
        rhs = op[col[:, None], col[None, :]]   # (x ◁ z) ◁ (y ◁ z)
        mismatch = np.argwhere(lhs != rhs)
        if mismatch.size:
            x, y = (int(v) for v in mismatch[0])
            raise AxiomViolation("Q3", (x, y, z))


def validate_quandle(table, name: str = "") -> FiniteQuandle:
    """Check Q1-Q3 on a square table and return the quandle with its inverse table"""
    op = _as_table(table)
    _check_axioms(op)
    n = op.shape[0]
    idx = np.arange(n)
    inv = np.empty_like(op)
    inv[op, idx[None, :]] = idx[:, None]
    logger.debug("validated %d-element quandle %s", n, name)
    return FiniteQuandle(_frozen(op), _frozen(inv), name)


def is_rack(table) -> bool:
    """Right-invertible and right-distributive, idempotency not required"""
    try:
        _check_axioms(_as_table(table), idempotent=False)
    except AxiomViolation:
        return False
    return True


def quandle_from_function(n: int, operation: Callable[[int, int], int], name: str = "") -> FiniteQuandle:
    return validate_quandle([[operation(x, y) for y in range(n)] for x in range(n)], name)


# ============================================================================
# FINITE GROUPS (Cayley tables)
# ============================================================================
@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    inv: np.ndarray
    identity: int
    name: str = ""

    @property
    def n(self) -> int:
        return int(self.mul.shape[0])

    @property
    def order(self) -> int:
        return self.n

    @property
    def elements(self) -> range:
        return range(self.n)

    @property
    def generators(self) -> Tuple[int, ...]:
        return tuple(range(self.n))

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"FiniteGroup(order {self.n}{label})"


def validate_group(mul, identity: Optional[int] = None, name: str = "") -> FiniteGroup:
    table = _as_table(mul)
    n = table.shape[0]
    if n == 0:
        raise MalformedTable("a group needs at least the identity")
    idx = np.arange(n)

    if identity is None:
        candidates = [e for e in range(n) if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx)]
        if not candidates:
            raise MalformedTable("no two-sided identity in Cayley table")
        identity = candidates[0]
    elif not (np.array_equal(table[identity], idx) and np.array_equal(table[:, identity], idx)):
        raise MalformedTable(f"element {identity} is not an identity", witness=(identity,))

    inv = np.empty(n, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero(table[a] == identity)
        if hits.size != 1 or table[hits[0], a] != identity:
            raise MalformedTable(f"element {a} has no two-sided inverse", witness=(a,))
        inv[a] = hits[0]

    for a in range(n):
        lhs = table[table[a][:, None], idx[None, :]]   # (ab)c
        rhs = table[a][table]                          # a(bc)
        mismatch = np.argwhere(lhs != rhs)
        if mismatch.size:
            b, c = (int(v) for v in mismatch[0])
            raise MalformedTable("multiplication is not associative", witness=(a, b, c))

    return FiniteGroup(_frozen(table), _frozen(inv), int(identity), name)


def group_from_elements(elements: Sequence, multiply: Callable, name: str = "") -> FiniteGroup:
    """Cayley table of a concrete group given by hashable elements and a product"""
    index = {g: i for i, g in enumerate(elements)}
    table = [[index[multiply(a, b)] for b in elements] for a in elements]
    return validate_group(table, name=name)


def cyclic_group(n: int) -> FiniteGroup:
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)], identity=0, name=f"Z/{n}")


def direct_product_group(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Pairs (g, h) indexed g * |H| + h"""
    m = H.n

    def multiply(a, b):
        return G.multiply(a // m, b // m) * m + H.multiply(a % m, b % m)

    table = [[multiply(a, b) for b in range(G.n * m)] for a in range(G.n * m)]
    return validate_group(table, identity=G.identity * m + H.identity, name=f"{G.name}x{H.name}")


def symmetric_group(n: int) -> FiniteGroup:
    """Sym(n) with left-to-right composition, elements in lexicographic image order"""
    perms = list(itertools.permutations(range(n)))
    return group_from_elements(perms, lambda a, b: tuple(b[i] for i in a), name=f"S{n}")


# ============================================================================
# CONSTRUCTORS
# ============================================================================
def trivial_quandle(n: int) -> FiniteQuandle:
    return validate_quandle([[x] * n for x in range(n)], name=f"T{n}")


def conj_quandle(G: FiniteGroup) -> FiniteQuandle:
    """g ◁ h = h⁻¹ g h"""
    idx = np.arange(G.n)
    t = G.mul[G.inv[None, :], idx[:, None]]   # h⁻¹ g
    return validate_quandle(G.mul[t, idx[None, :]], name=f"Conj({G.name})")


def _symmetric_table(G: FiniteGroup) -> np.ndarray:
    """x ◁ y = y x⁻¹ y, which is 2y - x in additive notation"""
    idx = np.arange(G.n)
    t = G.mul[idx[None, :], G.inv[:, None]]   # y x⁻¹
    return G.mul[t, idx[None, :]]


def tak_quandle(A: FiniteGroup, require_abelian: bool = True) -> FiniteQuandle:
    if require_abelian and not A.is_abelian():
        bad = np.argwhere(A.mul != A.mul.T)[0]
        raise NotAbelian(f"{A.name or 'group'} is not abelian", witness=tuple(int(v) for v in bad))
    return validate_quandle(_symmetric_table(A), name=f"Tak({A.name})")


def core_quandle(G: FiniteGroup) -> FiniteQuandle:
    """Core kei with x ◁ y = y x⁻¹ y, the orientation that coincides with Tak on abelian groups"""
    return validate_quandle(_symmetric_table(G), name=f"Core({G.name})")


def product_quandle(Q: FiniteQuandle, S: FiniteQuandle) -> FiniteQuandle:
    """Pairs (q, s) indexed q * |S| + s, operating coordinatewise"""
    total = Q.n * S.n
    if total == 0:
        return validate_quandle([], name=f"{Q.name}x{S.name}")
    idx = np.arange(total)
    qi, si = idx // S.n, idx % S.n
    op = Q.op[qi[:, None], qi[None, :]] * S.n + S.op[si[:, None], si[None, :]]
    return validate_quandle(op, name=f"{Q.name}x{S.name}")


def product_projections(Q: FiniteQuandle, S: FiniteQuandle, P: Optional[FiniteQuandle] = None):
    P = P if P is not None else product_quandle(Q, S)
    m = S.n
    first = QuandleHom(P, Q, tuple(i // m for i in range(P.n)))
    second = QuandleHom(P, S, tuple(i % m for i in range(P.n)))
    return first, second


def disjoint_union_quandle(Q: FiniteQuandle, S: FiniteQuandle) -> FiniteQuandle:
    """Q occupies 0..|Q|-1, S follows; the two summands act trivially on each other"""
    total = Q.n + S.n
    op = np.tile(np.arange(total)[:, None], (1, total))
    op[:Q.n, :Q.n] = Q.op
    op[Q.n:, Q.n:] = S.op + Q.n
    return validate_quandle(op, name=f"{Q.name}+{S.name}")


def disjoint_union_inclusions(Q: FiniteQuandle, S: FiniteQuandle, U: Optional[FiniteQuandle] = None):
    U = U if U is not None else disjoint_union_quandle(Q, S)
    return (QuandleHom(Q, U, tuple(range(Q.n))),
            QuandleHom(S, U, tuple(range(Q.n, Q.n + S.n))))


def davis_quotient(n: int) -> FiniteQuandle:
    """Z/n ⊔ {∞} ⊔ {s}: residues 0..n-1, ∞ = n, s = n+1; [x] ◁ s = [x+1], otherwise x ◁ y = x"""
    if n < 1:
        raise ValueError(f"modulus must be at least 1, got {n}")
    s = n + 1

    def operation(x, y):
        if x < n and y == s:
            return (x + 1) % n
        return x

    return quandle_from_function(n + 2, operation, name=f"Davis({n})")


# ============================================================================
# HOMOMORPHISMS AND ISOMORPHISM
# ============================================================================
@dataclass(frozen=True, eq=False)
class QuandleHom:
    src: FiniteQuandle
    dst: FiniteQuandle
    map: Tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.src.n:
            raise MalformedTable(f"map has {len(self.map)} entries for {self.src.n} elements")
        for x, value in enumerate(self.map):
            if not 0 <= value < self.dst.n:
                raise MalformedTable(f"map sends {x} to {value}, outside 0..{self.dst.n - 1}", witness=(x,))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.dst.n

    def is_bijective(self) -> bool:
        return self.src.n == self.dst.n and self.is_surjective()

    def then(self, other: "QuandleHom") -> "QuandleHom":
        """Apply self, then other"""
        return QuandleHom(self.src, other.dst, tuple(other.map[v] for v in self.map))

    def inverse(self) -> "QuandleHom":
        if not self.is_bijective():
            raise ValueError("only bijections have inverses")
        inv = [0] * self.src.n
        for x, value in enumerate(self.map):
            inv[value] = x
        return QuandleHom(self.dst, self.src, tuple(inv))


def identity_hom(Q: FiniteQuandle) -> QuandleHom:
    return QuandleHom(Q, Q, tuple(range(Q.n)))


def hom_failure(f: QuandleHom) -> Optional[Tuple[int, int]]:
    """First (x, y) with f(x ◁ y) != f(x) ◁ f(y), or None"""
    if f.src.n == 0:
        return None
    m = np.asarray(f.map, dtype=np.int64)
    bad = np.argwhere(m[f.src.op] != f.dst.op[m[:, None], m[None, :]])
    if bad.size:
        return tuple(int(v) for v in bad[0])
    return None


def is_hom(f: QuandleHom) -> bool:
    return hom_failure(f) is None


def reachability_classes(Q: FiniteQuandle) -> List[Tuple[int, ...]]:
    """Classes of the equivalence generated by x ~ x ◁ y and x ~ x ◁⁻¹ y"""
    label = [-1] * Q.n
    classes = []
    op, inv = Q.op.tolist(), Q.inv_op.tolist()
    for start in range(Q.n):
        if label[start] >= 0:
            continue
        label[start] = len(classes)
        members, queue = [start], deque([start])
        while queue:
            x = queue.popleft()
            for z in itertools.chain(op[x], inv[x]):
                if label[z] < 0:
                    label[z] = len(classes)
                    members.append(z)
                    queue.append(z)
        classes.append(tuple(sorted(members)))
    return classes


def _cycle_type(images: Sequence[int]) -> Tuple[int, ...]:
    seen = [False] * len(images)
    lengths = []
    for start in range(len(images)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = images[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def element_profile(Q: FiniteQuandle) -> List[tuple]:
    """Isomorphism-invariant label per element: orbit size, cycle type of S_x, |{y : x ◁ y = x}|"""
    orbit_size = [0] * Q.n
    for cls in reachability_classes(Q):
        for x in cls:
            orbit_size[x] = len(cls)
    profile = []
    for x in range(Q.n):
        column = Q.op[:, x].tolist()
        fixers = int(np.count_nonzero(Q.op[x] == x))
        profile.append((orbit_size[x], _cycle_type(column), fixers))
    return profile


def _propagate(mapping, used, worklist, tables, profiles) -> bool:
    """Extend forced images until fixpoint; False on conflict"""
    qop, qinv, sop, sinv = tables
    pq, ps = profiles
    assigned = [x for x, v in enumerate(mapping) if v >= 0]
    while worklist:
        a = worklist.pop()
        ma = mapping[a]
        for b in list(assigned):
            mb = mapping[b]
            for c, img in ((qop[a][b], sop[ma][mb]), (qop[b][a], sop[mb][ma]),
                           (qinv[a][b], sinv[ma][mb]), (qinv[b][a], sinv[mb][ma])):
                current = mapping[c]
                if current < 0:
                    if img in used or pq[c] != ps[img]:
                        return False
                    mapping[c] = img
                    used.add(img)
                    assigned.append(c)
                    worklist.append(c)
                elif current != img:
                    return False
    return True


def find_isomorphism(Q: FiniteQuandle, S: FiniteQuandle) -> Optional[QuandleHom]:
    """Lexicographically least isomorphism Q -> S, or None"""
    if Q.n != S.n:
        return None
    pq, ps = element_profile(Q), element_profile(S)
    if Counter(pq) != Counter(ps):
        return None
    n = Q.n
    tables = (Q.op.tolist(), Q.inv_op.tolist(), S.op.tolist(), S.inv_op.tolist())
    candidates = [[y for y in range(n) if ps[y] == pq[x]] for x in range(n)]

    def search(mapping, used):
        try:
            x = mapping.index(-1)
        except ValueError:
            return mapping
        for y in candidates[x]:
            if y in used:
                continue
            trial, trial_used = list(mapping), set(used)
            trial[x] = y
            trial_used.add(y)
            if _propagate(trial, trial_used, [x], tables, (pq, ps)):
                found = search(trial, trial_used)
                if found is not None:
                    return found
        return None

    result = search([-1] * n, set())
    if result is None:
        return None
    return QuandleHom(Q, S, tuple(result))


def canonical_table(Q: FiniteQuandle) -> Tuple[Tuple[int, ...], ...]:
    """Lexicographically least relabelled table over all n! relabelings"""
    n = Q.n
    best = None
    op = Q.op
    for perm in itertools.permutations(range(n)):
        p = np.asarray(perm, dtype=np.int64)     # old label -> new label
        q = np.argsort(p)                        # new label -> old label
        relabelled = p[op[q[:, None], q[None, :]]]
        candidate = tuple(map(tuple, relabelled.tolist()))
        if best is None or candidate < best:
            best = candidate
    return best if best is not None else ()


# ============================================================================
# SUBQUANDLES
# ============================================================================
@dataclass(frozen=True)
class Subquandle:
    """Sorted element set of a parent quandle, closed under ◁ and ◁⁻¹"""
    parent: FiniteQuandle = field(compare=False, repr=False)
    elems: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, x) -> bool:
        return x in self.elems

    def __iter__(self):
        return iter(self.elems)

    def is_full(self) -> bool:
        return len(self.elems) == self.parent.n

    def as_quandle(self) -> FiniteQuandle:
        """Restriction relabelled to 0..k-1 in the order of elems"""
        local = {x: i for i, x in enumerate(self.elems)}
        table = [[local[self.parent.act(x, y)] for y in self.elems] for x in self.elems]
        return validate_quandle(table, name=f"sub({self.parent.name})")


def is_subquandle(Q: FiniteQuandle, elems: Iterable[int]) -> bool:
    sub = np.asarray(sorted(set(elems)), dtype=np.int64)
    if sub.size and (sub.min() < 0 or sub.max() >= Q.n):
        return False
    block = np.ix_(sub, sub)
    return bool(np.isin(Q.op[block], sub).all() and np.isin(Q.inv_op[block], sub).all())


def generated_subquandle(Q: FiniteQuandle, seed: Iterable[int]) -> Subquandle:
    """Least subquandle containing seed, by worklist closure"""
    start = sorted(set(int(x) for x in seed))
    for x in start:
        if not 0 <= x < Q.n:
            raise IndexOutOfRange(f"seed element {x} outside 0..{Q.n - 1}", witness=(x,))
    op, inv = Q.op.tolist(), Q.inv_op.tolist()
    members = set(start)
    order = list(start)
    queue = deque(start)
    while queue:
        x = queue.popleft()
        for y in list(order):
            for z in (op[x][y], op[y][x], inv[x][y], inv[y][x]):
                if z not in members:
                    members.add(z)
                    order.append(z)
                    queue.append(z)
    return Subquandle(Q, tuple(sorted(members)))


def all_subquandles(Q: FiniteQuandle, bound: int = SUBQUANDLE_ENUM_BOUND) -> List[Subquandle]:
    """Every subquandle including the empty one, ordered by (size, elements)"""
    if Q.n > bound:
        raise SizeBound("subquandle enumeration", Q.n, bound)
    found = []
    for size in range(Q.n + 1):
        for combo in itertools.combinations(range(Q.n), size):
            if is_subquandle(Q, combo):
                found.append(Subquandle(Q, combo))
    logger.debug("%r has %d subquandles", Q, len(found))
    return found


def _same_parent(A: Subquandle, B: Subquandle):
    if A.parent is not B.parent and A.parent != B.parent:
        raise ValueError("subquandles of different quandles")


def meet(A: Subquandle, B: Subquandle) -> Subquandle:
    _same_parent(A, B)
    return Subquandle(A.parent, tuple(sorted(set(A.elems) & set(B.elems))))


def join(A: Subquandle, B: Subquandle) -> Subquandle:
    _same_parent(A, B)
    return generated_subquandle(A.parent, A.elems + B.elems)


def find_complement(Q: FiniteQuandle, A: Subquandle,
                    bound: int = SUBQUANDLE_ENUM_BOUND) -> Optional[Subquandle]:
    """First B in lattice order with A ∧ B = ∅ and A ∨ B = Q, or None"""
    for B in all_subquandles(Q, bound):
        if not meet(A, B).elems and join(A, B).is_full():
            return B
    return None


if __name__ == "__main__":
    tait = validate_quandle(TAIT_TABLE, name="Tait")
    print(tait.display_table())
    print(f"subquandles: {[s.elems for s in all_subquandles(tait)]}")
