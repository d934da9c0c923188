"""
Integer Smith normal form, finitely generated abelian groups, the abelian
kei invariant AdTak and verification of augmented quandles.

Matrices hold Python integers in numpy object arrays so intermediate
entries never overflow.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence, Tuple

import numpy as np

from errors import (ActionFailure, AQ1Failure, AQ2Failure, FormatError, NotKei,
                    OperationMismatch)
from inner import inn, symmetries
from quandle_core import FiniteQuandle

logger = logging.getLogger(__name__)


# ============================================================================
# INTEGER MATRICES
# ============================================================================
def _object_matrix(rows: int, cols: int, fill=None) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = int(fill[i][j]) if fill is not None else 0
    return out


def _identity(size: int) -> np.ndarray:
    out = _object_matrix(size, size)
    for i in range(size):
        out[i, i] = 1
    return out


@dataclass(frozen=True, eq=False)
class IntMatrix:
    entries: np.ndarray

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        for i, r in enumerate(rows):
            if len(r) != width:
                raise FormatError(f"matrix row {i} has {len(r)} entries, expected {width}", witness=(i,))
        return cls(_object_matrix(len(rows), width, rows))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(_identity(size))

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    def tolist(self):
        return [[int(v) for v in row] for row in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        out = _object_matrix(self.rows, other.cols)
        for i in range(self.rows):
            for j in range(other.cols):
                out[i, j] = sum((self.entries[i, k] * other.entries[k, j] for k in range(self.cols)), 0)
        return IntMatrix(out)

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(int(self.entries[i, i]) for i in range(min(self.rows, self.cols)))

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.tolist() == other.tolist()

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


def _swap_rows(A, i, j):
    if i != j:
        A[[i, j]] = A[[j, i]]


def _swap_cols(A, i, j):
    if i != j:
        A[:, [i, j]] = A[:, [j, i]]


def smith_normal_form(M: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Unimodular U, V and diagonal S with U·M·V = S and S[i][i] | S[i+1][i+1].

    Pivot policy: least absolute nonzero entry of the remaining block,
    ties broken by row-major position.
    """
    A = M.entries.copy()
    m, n = A.shape
    U, V = _identity(m), _identity(n)

    for t in range(min(m, n)):
        block = A[t:, t:]
        nonzero = np.argwhere(block != 0)
        if not nonzero.size:
            break
        i, j = min(nonzero.tolist(), key=lambda ij: abs(block[ij[0], ij[1]]))
        _swap_rows(A, t, t + i)
        _swap_rows(U, t, t + i)
        _swap_cols(A, t, t + j)
        _swap_cols(V, t, t + j)

        while True:
            p = A[t, t]
            for r in range(t + 1, m):
                q = A[r, t] // p
                if q:
                    A[r, :] -= q * A[t, :]
                    U[r, :] -= q * U[t, :]
            for c in range(t + 1, n):
                q = A[t, c] // p
                if q:
                    A[:, c] -= q * A[:, t]
                    V[:, c] -= q * V[:, t]

            leftovers = [(abs(A[r, t]), 0, r) for r in range(t + 1, m) if A[r, t] != 0]
            leftovers += [(abs(A[t, c]), 1, c) for c in range(t + 1, n) if A[t, c] != 0]
            if leftovers:
                _, axis, k = min(leftovers)
                if axis == 0:
                    _swap_rows(A, t, k)
                    _swap_rows(U, t, k)
                else:
                    _swap_cols(A, t, k)
                    _swap_cols(V, t, k)
                continue

            blocker = next(((r, c) for r in range(t + 1, m) for c in range(t + 1, n)
                            if A[r, c] % p != 0), None)
            if blocker is None:
                break
            r = blocker[0]
            A[t, :] += A[r, :]
            U[t, :] += U[r, :]

        if A[t, t] < 0:
            A[t, :] *= -1
            U[t, :] *= -1

    return IntMatrix(U), IntMatrix(A), IntMatrix(V)


# ============================================================================
# FINITELY GENERATED ABELIAN GROUPS
# ============================================================================
@dataclass(frozen=True)
class FGAbelianGroup:
    free_rank: int
    torsion: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"invariant factors must be at least 2: {self.torsion}")

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


def relation_group(M: IntMatrix) -> FGAbelianGroup:
    """Z^cols modulo the row lattice of M"""
    _, S, _ = smith_normal_form(M)
    diagonal = [d for d in S.diagonal() if d != 0]
    return FGAbelianGroup(M.cols - len(diagonal), tuple(d for d in diagonal if d > 1))


def adtak_relations(K: FiniteQuandle) -> IntMatrix:
    """One row e_x + e_{x◁y} - 2e_y per ordered pair (x, y), diagonal pairs included"""
    rows = []
    for x in range(K.n):
        for y in range(K.n):
            row = [0] * K.n
            row[x] += 1
            row[K.act(x, y)] += 1
            row[y] -= 2
            rows.append(row)
    return IntMatrix.from_rows(rows, cols=K.n)


def adtak(K: FiniteQuandle, require_kei: bool = True) -> FGAbelianGroup:
    if require_kei and not K.is_kei():
        x, y = next((x, y) for x in range(K.n) for y in range(K.n) if K.act(K.act(x, y), y) != x)
        raise NotKei(f"(x ◁ y) ◁ y != x at {(x, y)}", witness=(x, y))
    group = relation_group(adtak_relations(K))
    logger.debug("AdTak(%s) = %s", K.name, group)
    return group


# ============================================================================
# AUGMENTED QUANDLES
# ============================================================================
@dataclass(frozen=True, eq=False)
class AugmentedQuandle:
    """
    quandle with a right action of `group` (action[g][x] = x·g) and an
    augmentation aug[x] in the group
    """
    quandle: FiniteQuandle
    group: Any
    action: Mapping[Any, Sequence[int]]
    aug: Sequence[Any]

    def act(self, x: int, g) -> int:
        images = self.action[g]
        return getattr(images, "images", images)[x]


def verify_augmented(A: AugmentedQuandle):
    """Raise ActionFailure, AQ1Failure, AQ2Failure or OperationMismatch at the first bad witness"""
    Q, G = A.quandle, A.group
    n = Q.n

    for x in range(n):
        if A.act(x, G.identity) != x:
            raise ActionFailure("identity does not act trivially", witness=(x,))
    for g in G.elements:
        for s in G.generators:
            gs = G.multiply(g, s)
            for x in range(n):
                if A.act(A.act(x, g), s) != A.act(x, gs):
                    raise ActionFailure("(x·g)·s != x·(gs)", witness=(x, str(g), str(s)))
        for x in range(n):
            for y in range(n):
                if A.act(Q.act(x, y), g) != Q.act(A.act(x, g), A.act(y, g)):
                    raise ActionFailure("group element does not act by an automorphism",
                                        witness=(x, y, str(g)))

    for x in range(n):
        if A.act(x, A.aug[x]) != x:
            raise AQ1Failure("x·|x| != x", witness=(x,))

    for x in range(n):
        for g in G.elements:
            lhs = A.aug[A.act(x, g)]
            rhs = G.multiply(G.multiply(G.inverse(g), A.aug[x]), g)
            if lhs != rhs:
                raise AQ2Failure("|x·g| != g⁻¹|x|g", witness=(x, str(g)))

    for x in range(n):
        for y in range(n):
            if A.act(x, A.aug[y]) != Q.act(x, y):
                raise OperationMismatch("x·|y| differs from x ◁ y", witness=(x, y))


def natural_augmentation(Q: FiniteQuandle) -> AugmentedQuandle:
    """Inn(Q) acting naturally, with |y| = S_y"""
    G = inn(Q)
    return AugmentedQuandle(Q, G, {g: g for g in G.elements}, tuple(symmetries(Q)))


if __name__ == "__main__":
    U, S, V = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    print(f"S = {S.tolist()}")
