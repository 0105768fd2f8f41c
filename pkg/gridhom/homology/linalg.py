"""Exact linear algebra: GF(2) on numpy uint8 arrays, integers through unit pivots and sympy."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

logger = logging.getLogger(__name__)

SparseRow = dict[int, int]


def gf2_vector(size: int, indices: Iterable[int] = ()) -> np.ndarray:
    """The 0/1 vector of length ``size`` with ones at ``indices`` (repeats cancel)."""
    v = np.zeros(size, dtype=np.uint8)
    for i in indices:
        v[i] ^= 1
    return v


def gf2_row_echelon(M, n_pivot_cols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a binary matrix over GF(2).

    Pivots are searched only in the first ``n_pivot_cols`` columns; row
    operations still apply to the full width, so augmented columns ride along.
    Returns the echelon form and the pivot columns.
    """
    R = (np.asarray(M, dtype=np.uint8) % 2).copy()
    m, n = R.shape
    if n_pivot_cols is None:
        n_pivot_cols = n
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(n_pivot_cols):
        if pivot_row == m:
            break
        found = np.flatnonzero(R[pivot_row:, col])
        if not found.size:
            continue
        top = pivot_row + int(found[0])
        if top != pivot_row:
            R[[pivot_row, top]] = R[[top, pivot_row]]
        below = pivot_row + 1 + np.flatnonzero(R[pivot_row + 1 :, col])
        if below.size:
            R[below] ^= R[pivot_row]
        pivot_cols.append(col)
        pivot_row += 1
    return R, pivot_cols


def gf2_rank(M) -> int:
    return len(gf2_row_echelon(M)[1])


def gf2_apply(rows: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Image of the source vector ``v`` under the map whose row i is the image of basis vector i."""
    return ((np.asarray(v, dtype=np.int64) @ np.asarray(rows, dtype=np.int64)) % 2).astype(np.uint8)


def gf2_kernel(rows: np.ndarray) -> np.ndarray:
    """Kernel of the map sending source basis vector i to ``rows[i]``.

    Returns a basis of the kernel as the rows of a (k, len(rows)) array.
    """
    rows = np.asarray(rows, dtype=np.uint8)
    s, t = rows.shape
    augmented = np.hstack([rows, np.eye(s, dtype=np.uint8)])
    R, pivot_cols = gf2_row_echelon(augmented, n_pivot_cols=t)
    return R[len(pivot_cols) :, t:].copy()


def gf2_solve(A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solve A x = b over GF(2); free variables are 0.

    Returns None when the system is inconsistent.
    """
    A = np.asarray(A, dtype=np.uint8)
    neq, nvars = A.shape
    if len(b) != neq:
        raise ValueError(f"{neq} equations but {len(b)} right-hand sides")
    R, pivot_cols = gf2_row_echelon(np.hstack([A, np.asarray(b, dtype=np.uint8).reshape(neq, 1)]), n_pivot_cols=nvars)
    rank = len(pivot_cols)
    if R[rank:, nvars].any():
        return None
    x = np.zeros(nvars, dtype=np.uint8)
    for i in reversed(range(rank)):
        col = pivot_cols[i]
        rest = int(np.dot(R[i, col + 1 : nvars].astype(np.int64), x[col + 1 :])) & 1
        x[col] = R[i, nvars] ^ rest
    return x


def _resized(tag: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=np.uint8)
    keep = min(size, len(tag))
    out[:keep] = tag[:keep]
    return out


class GF2Basis:
    """Echelon basis of a subspace of GF(2)^size, grown one row at a time.

    Every stored row carries a tag vector recording which inserted vectors it
    is the sum of, so reductions return coordinates as well as residues. Rows
    are kept in insertion order; each is zero on the pivots of the rows before it.
    """

    def __init__(self, size: int, vectors: Iterable[np.ndarray] = (), tag_size: int = 0):
        self.size = size
        self.tag_size = tag_size
        self.pivot_cols: list[int] = []
        self.rows: list[np.ndarray] = []
        self.tags: list[np.ndarray] = []
        for v in vectors:
            self.add(v)

    @classmethod
    def from_rows(cls, rows: np.ndarray, tag_size: int = 0) -> GF2Basis:
        """Span of the rows of a matrix, reduced in one pass."""
        R, pivot_cols = gf2_row_echelon(rows)
        basis = cls(R.shape[1], tag_size=tag_size)
        basis.pivot_cols = list(pivot_cols)
        basis.rows = [R[k] for k in range(len(pivot_cols))]
        basis.tags = [np.zeros(tag_size, dtype=np.uint8) for _ in pivot_cols]
        return basis

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: np.ndarray, tag: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Reduce ``v`` against the basis; the residue is 0 iff ``v`` lies in the span."""
        v = np.array(v, dtype=np.uint8)
        tag = np.zeros(self.tag_size, dtype=np.uint8) if tag is None else np.array(tag, dtype=np.uint8)
        if len(v) != self.size:
            raise ValueError(f"vector of length {len(v)} in a basis of GF(2)^{self.size}")
        for col, row, row_tag in zip(self.pivot_cols, self.rows, self.tags):
            if v[col]:
                v ^= row
                tag ^= row_tag
        return v, tag

    def add(self, v: np.ndarray, tag: np.ndarray | None = None) -> bool:
        """Insert ``v``; False when it was already in the span."""
        v, tag = self.reduce(v, tag)
        nonzero = np.flatnonzero(v)
        if not nonzero.size:
            return False
        self.pivot_cols.append(int(nonzero[0]))
        self.rows.append(v)
        self.tags.append(tag)
        return True

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v)[0].any()

    def copy(self, tag_size: int | None = None) -> GF2Basis:
        """A copy whose tags are padded or cut to ``tag_size``."""
        tag_size = self.tag_size if tag_size is None else tag_size
        result = GF2Basis(self.size, tag_size=tag_size)
        result.pivot_cols = list(self.pivot_cols)
        result.rows = list(self.rows)
        result.tags = [_resized(tag, tag_size) for tag in self.tags]
        return result


# ---------------------------------------------------------------------------
# Integers
# ---------------------------------------------------------------------------


def _eliminate_unit_pivots(rows: Sequence[SparseRow]) -> tuple[list[SparseRow], int]:
    """Pivot on every ±1 entry; returns the remaining rows and the pivot count.

    Each pivot removes one row and one column and contributes a factor 1 to the
    Smith form, so rank and torsion of the remainder determine the original.
    """
    work: dict[int, SparseRow] = {i: dict(row) for i, row in enumerate(rows) if row}
    columns: dict[int, set[int]] = {}
    for i, row in work.items():
        for c in row:
            columns.setdefault(c, set()).add(i)
    pivots = 0
    changed = True
    while changed:
        changed = False
        for i in sorted(work):
            row = work.get(i)
            if not row:
                continue
            unit = next((c for c in sorted(row) if row[c] in (1, -1)), None)
            if unit is None:
                continue
            p = row[unit]
            for k in sorted(columns.get(unit, ())):
                if k == i:
                    continue
                other = work[k]
                factor = other[unit] * p
                for c, value in row.items():
                    new = other.get(c, 0) - factor * value
                    if new:
                        other[c] = new
                        columns.setdefault(c, set()).add(k)
                    else:
                        other.pop(c, None)
                        columns[c].discard(k)
                if not other:
                    del work[k]
            for c in row:
                columns[c].discard(i)
            del work[i]
            pivots += 1
            changed = True
    return [row for _, row in sorted(work.items()) if row], pivots


def integer_invariants(rows: Sequence[SparseRow]) -> tuple[int, list[int]]:
    """Rank and nontrivial invariant factors (> 1) of a sparse integer matrix."""
    remaining, pivots = _eliminate_unit_pivots(rows)
    if not remaining:
        return pivots, []
    cols = sorted({c for row in remaining for c in row})
    position = {c: j for j, c in enumerate(cols)}
    dense = [[ZZ(0)] * len(cols) for _ in remaining]
    for i, row in enumerate(remaining):
        for c, value in row.items():
            dense[i][position[c]] = ZZ(value)
    logger.debug("[integer_invariants] %d unit pivots, Smith form on %dx%d", pivots, len(remaining), len(cols))
    factors = [int(abs(int(f))) for f in invariant_factors(DomainMatrix(dense, (len(remaining), len(cols)), ZZ))]
    factors = [f for f in factors if f]
    return pivots + len(factors), sorted(f for f in factors if f > 1)


def integer_rank(rows: Sequence[SparseRow]) -> int:
    return integer_invariants(rows)[0]
