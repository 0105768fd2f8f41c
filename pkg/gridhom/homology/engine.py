"""Per-bigrading homology of free bigraded complexes.

Cells are indexed by (m, a2) with a2 twice the Alexander grading. A cell's chain
group is spanned by monomial multiples of generators landing in that bidegree;
cells are finite because every U-like variable lowers a2 and v raises m.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from gridhom.complex.freecomplex import Exps, FreeComplex, FreeMap, Vector
from gridhom.complex.polynomial import Ring
from gridhom.homology.linalg import GF2Basis, SparseRow, gf2_kernel, gf2_vector, integer_invariants
from gridhom.shared import config
from gridhom.shared.errors import SizeMismatch, VariantMismatch, WindowTooSmall
from gridhom.shared.schemas import ActionRow, BigradingRow, HomologyTable, Window

logger = logging.getLogger(__name__)

Cell = tuple[int, int]
BasisEntry = tuple[int, Exps]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


@dataclass
class CellHomology:
    """Homology of one cell of the collapsed complex.

    ``reps`` are cycle representatives of a homology basis, as 0/1 vectors over
    the cell's slice basis; ``quotient`` holds the boundaries (tag 0) and the
    representatives (tag e_k), so reducing a cycle yields its coordinates.
    """

    size: int
    rank_out: int
    rank_in: int
    dim: int
    torsion: list[int] = field(default_factory=list)
    reps: list[np.ndarray] = field(default_factory=list)
    quotient: GF2Basis | None = None
    boundaries: GF2Basis | None = None


@dataclass
class Slice:
    basis: list[BasisEntry]
    position: dict[BasisEntry, int]

    def __len__(self) -> int:
        return len(self.basis)

    def to_vector(self, bits: np.ndarray) -> Vector:
        return {self.basis[int(i)]: 1 for i in np.flatnonzero(bits)}

    def to_bits(self, vector: Vector, where: str = "") -> np.ndarray:
        bits = np.zeros(len(self.basis), dtype=np.uint8)
        for key, coeff in vector.items():
            if coeff % 2 == 0:
                continue
            index = self.position.get(key)
            if index is None:
                raise SizeMismatch(f"term {key} falls outside the slice {where}")
            bits[index] ^= 1
        return bits


def default_window(
    complex_: FreeComplex,
    margin: int | None = None,
    v_depth: int | None = None,
) -> Window:
    """Alexander range [A_min - margin, A_max] and bands [δ_min, δ_max (+ 2 v_depth)]."""
    if margin is None:
        margin = config.window_margin(complex_.grid_size) if complex_.num_u else 0
    if v_depth is None:
        v_depth = config.v_depth()
    deltas = [m - a2 for m, a2 in zip(complex_.maslov, complex_.alex2)]
    band_max = max(deltas) + (2 * v_depth if complex_.has_v else 0)
    return Window(
        a_min=Fraction(min(complex_.alex2) - 2 * margin, 2),
        a_max=Fraction(max(complex_.alex2), 2),
        band_min=min(deltas),
        band_max=band_max,
    )


def divide_by_w(
    collapsed: Callable[[int, int], int],
    k: int,
    a2_max: int,
    band_min: int,
) -> Callable[[int, int], int]:
    """Undo the tensor factor W^k, W = F(0,0) ⊕ F(-1,-1).

    ``collapsed(m, a2)`` is any additive quantity on H ⊗ W^k (dimension, rank
    of a W-linear map, torsion count); the result is the same quantity on H.
    Works top-down in Alexander grading, which is bounded above.
    """
    memo: dict[Cell, int] = {}

    def value(m: int, a2: int) -> int:
        if a2 > a2_max or m - a2 < band_min:
            return 0
        key = (m, a2)
        if key not in memo:
            total = collapsed(m, a2)
            for j in range(1, k + 1):
                total -= comb(k, j) * value(m + j, a2 + 2 * j)
            if total < 0:
                raise WindowTooSmall(f"negative quotient by W^{k} at {key}: the input is not divisible")
            memo[key] = total
        return memo[key]

    return value


class HomologyEngine:
    """Slices, cell homology, induced maps and W-division for one free complex."""

    def __init__(self, complex_: FreeComplex, window: Window | None = None, threads: int | None = None):
        self.complex = complex_
        self.window = window or default_window(complex_)
        self.threads = threads or config.threads()
        self._groups: dict[tuple[int, int], list[int]] = {}
        for i, key in enumerate(zip(complex_.maslov, complex_.alex2)):
            self._groups.setdefault(key, []).append(i)
        self._group_keys = sorted(self._groups)
        self.a2_min = min(complex_.alex2)
        self.a2_max = max(complex_.alex2)
        deltas = [m - a2 for m, a2 in zip(complex_.maslov, complex_.alex2)]
        self.delta_min = min(deltas)
        self.delta_max = max(deltas)
        self._lock = threading.Lock()
        self._slices: dict[Cell, Slice] = {}
        self._cells: dict[Cell, CellHomology] = {}
        self._dividers: dict[str, Callable[[int, int], int]] = {}

    # -- slices -------------------------------------------------------------

    def slice(self, m: int, a2: int) -> Slice:
        key = (m, a2)
        with self._lock:
            cached = self._slices.get(key)
        if cached is not None:
            return cached
        c = self.complex
        basis: list[BasisEntry] = []
        for gm, ga2 in self._group_keys:
            drop = ga2 - a2
            if drop < 0 or drop % 2:
                continue
            e_total = drop // 2
            if c.num_u == 0 and e_total:
                continue
            lift = m - gm + 2 * e_total
            if lift % 2:
                continue
            f = lift // 2
            if f < 0 or (f and not c.has_v):
                continue
            tail = (f,) if c.has_v else ()
            for u in _compositions(e_total, c.num_u):
                for i in self._groups[(gm, ga2)]:
                    basis.append((i, u + tail))
        basis.sort()
        result = Slice(basis, {entry: k for k, entry in enumerate(basis)})
        with self._lock:
            self._slices.setdefault(key, result)
        return result

    def slice_basis(self, m: int, a2: int) -> list[BasisEntry]:
        if a2 > 2 * self.window.a_max:
            return []
        if not self.window.contains(m, Fraction(a2, 2)):
            raise WindowTooSmall(f"bigrading ({m}, {Fraction(a2, 2)}) lies outside {self.window}")
        return self.slice(m, a2).basis

    def rows_mod2(self, m: int, a2: int) -> np.ndarray:
        """Images of the (m, a2) basis in the (m - 1, a2) basis, one row each."""
        source, target = self.slice(m, a2), self.slice(m - 1, a2)
        rows = np.zeros((len(source), len(target)), dtype=np.uint8)
        for k, entry in enumerate(source.basis):
            rows[k] = target.to_bits(self.complex.apply({entry: 1}), f"({m - 1}, {a2})")
        return rows

    def rows_integer(self, m: int, a2: int) -> list[SparseRow]:
        source, target = self.slice(m, a2), self.slice(m - 1, a2)
        rows = []
        for entry in source.basis:
            image = self.complex.apply({entry: 1})
            rows.append({target.position[key]: coeff for key, coeff in image.items()})
        return rows

    # -- cells --------------------------------------------------------------

    def canonical(self, m: int, a2: int) -> Cell:
        """Representative cell related to (m, a2) by powers of U or v acting isomorphically."""
        if self.complex.num_u == 1:
            while a2 <= self.a2_min - 2:
                m, a2 = m + 2, a2 + 2
        if self.complex.has_v:
            while m - a2 >= self.delta_max + 3:
                m -= 2
        return m, a2

    def _compute_cell(self, m: int, a2: int) -> CellHomology:
        size = len(self.slice(m, a2))
        if self.complex.ring is Ring.INTEGERS:
            rank_out = integer_invariants(self.rows_integer(m, a2))[0] if size else 0
            rank_in, torsion = integer_invariants(self.rows_integer(m + 1, a2)) if size else (0, [])
            return CellHomology(size, rank_out, rank_in, size - rank_out - rank_in, torsion)
        out_rows = self.rows_mod2(m, a2)
        cycles = gf2_kernel(out_rows)
        boundaries = GF2Basis.from_rows(self.rows_mod2(m + 1, a2))
        quotient = boundaries.copy(tag_size=len(cycles))
        reps: list[np.ndarray] = []
        for z in cycles:
            if quotient.add(z, gf2_vector(len(cycles), [len(reps)])):
                reps.append(z)
        cell = CellHomology(size, size - len(cycles), len(boundaries), len(reps), [], reps, quotient, boundaries)
        logger.debug("[engine] %s cell (%d, %d): size %d dim %d", self.complex.name, m, a2, size, cell.dim)
        return cell

    def cell(self, m: int, a2: int) -> CellHomology:
        key = self.canonical(m, a2)
        with self._lock:
            cached = self._cells.get(key)
        if cached is None:
            cached = self._compute_cell(*key)
            with self._lock:
                cached = self._cells.setdefault(key, cached)
        return cached

    def window_cells(self) -> list[Cell]:
        w = self.window
        parities = {a2 % 2 for a2 in self.complex.alex2}
        cells = []
        for a2 in range(int(2 * w.a_min), int(2 * w.a_max) + 1):
            if a2 % 2 not in parities:
                continue
            for band in range(w.band_min, w.band_max + 1):
                cells.append((band + a2, a2))
        return cells

    def compute(self, cells: list[Cell] | None = None) -> None:
        """Fill the cell cache, fanning the distinct representatives out over threads."""
        cells = self.window_cells() if cells is None else cells
        todo = sorted({self.canonical(m, a2) for m, a2 in cells} - set(self._cells))
        if not todo:
            return
        logger.info("[engine] %s: computing %d cells on %d threads", self.complex.name, len(todo), self.threads)
        if self.threads <= 1:
            results = [self._compute_cell(m, a2) for m, a2 in todo]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(lambda cell: self._compute_cell(*cell), todo))
        with self._lock:
            for key, result in zip(todo, results):
                self._cells.setdefault(key, result)

    # -- collapsed quantities -------------------------------------------------

    def collapsed_dim(self, m: int, a2: int) -> int:
        return self.cell(m, a2).dim

    def collapsed_torsion(self, m: int, a2: int) -> list[int]:
        return self.cell(m, a2).torsion

    def image_bits(self, f: Callable[[Vector], Vector] | FreeMap, source: Cell, target_engine: HomologyEngine, target: Cell) -> list[np.ndarray]:
        """Images of the homology representatives at ``source`` as 0/1 vectors of ``target``."""
        apply = f.apply if isinstance(f, FreeMap) else f
        src_slice = self.slice(*source)
        dst_slice = target_engine.slice(*target)
        return [
            dst_slice.to_bits(apply(src_slice.to_vector(z)), f"{target} of {target_engine.complex.name}")
            for z in self.cell(*source).reps
        ]

    def induced_rank(
        self,
        f: Callable[[Vector], Vector] | FreeMap,
        source: Cell,
        target: Cell,
        target_engine: HomologyEngine | None = None,
    ) -> int:
        """Rank on homology of a chain map between two cells (collapsed level, F2)."""
        self._require_mod2()
        target_engine = target_engine or self
        if not self.cell(*source).dim or not target_engine.cell(*target).dim:
            return 0
        boundaries = target_engine.cell(*target).boundaries.copy()
        base = len(boundaries)
        for bits in self.image_bits(f, source, target_engine, target):
            boundaries.add(bits)
        return len(boundaries) - base

    def induced_matrix(
        self,
        f: Callable[[Vector], Vector] | FreeMap,
        source: Cell,
        target: Cell,
        target_engine: HomologyEngine | None = None,
    ) -> list[list[int]]:
        """Matrix of the induced map in the representative bases; entry [row][col] over F2."""
        self._require_mod2()
        target_engine = target_engine or self
        dst = target_engine.cell(*target)
        columns = []
        for bits in self.image_bits(f, source, target_engine, target):
            residue, tag = dst.quotient.reduce(bits)
            if residue.any():
                raise SizeMismatch(f"image at {target} is not a cycle: the map is not a chain map")
            columns.append(tag[: dst.dim])
        return [[int(col[row]) for col in columns] for row in range(dst.dim)]

    def power_map(self, which: str, power: int, variable: int = 0) -> Callable[[Vector], Vector]:
        """Multiplication by v^power or by the power of the U-like ``variable``."""
        c = self.complex
        if which == "U":
            if not c.num_u:
                raise VariantMismatch(f"{c.name} has no U variable")
            if not 0 <= variable < c.num_u:
                raise VariantMismatch(f"{c.name} has no U-like variable {variable}")
            slot = variable
        elif which == "v":
            if not c.has_v:
                raise VariantMismatch(f"{c.name} has no v variable")
            slot = c.num_u
        else:
            raise VariantMismatch(f"unknown action {which!r}")

        def multiply(vector: Vector) -> Vector:
            out: Vector = {}
            for (i, exps), coeff in vector.items():
                shifted = list(exps)
                shifted[slot] += power
                out[(i, tuple(shifted))] = coeff
            return out

        return multiply

    @staticmethod
    def power_degree(which: str, power: int) -> tuple[int, int]:
        return (-2 * power, -2 * power) if which == "U" else (2 * power, 0)

    def collapsed_power_rank(self, which: str, power: int, m: int, a2: int, variable: int = 0) -> int:
        dm, da2 = self.power_degree(which, power)
        return self.induced_rank(self.power_map(which, power, variable), (m, a2), (m + dm, a2 + da2))

    # -- divided quantities ---------------------------------------------------

    def _divided(self, key: str, collapsed: Callable[[int, int], int]) -> Callable[[int, int], int]:
        with self._lock:
            fn = self._dividers.get(key)
            if fn is None:
                fn = divide_by_w(collapsed, self.complex.w_power, self.a2_max, self.delta_min)
                self._dividers[key] = fn
        return fn

    def dim(self, m: int, a2: int) -> int:
        return self._divided("dim", self.collapsed_dim)(m, a2)

    def torsion(self, m: int, a2: int) -> list[int]:
        # an order missing here is missing from every W-summand too
        orders = sorted(set(self.collapsed_torsion(m, a2)))
        result: list[int] = []
        for q in orders:
            count = self._divided(f"torsion:{q}", lambda mm, aa, q=q: self.collapsed_torsion(mm, aa).count(q))(m, a2)
            result.extend([q] * count)
        return result

    def power_rank(self, which: str, power: int, m: int, a2: int) -> int:
        """Rank of U^power or v^power on the reduced homology at (m, a2)."""
        return self._divided(f"{which}^{power}", lambda mm, aa: self.collapsed_power_rank(which, power, mm, aa))(m, a2)

    def action_rank(self, which: str, m: int, a2: int) -> int:
        return self.power_rank(which, 1, m, a2)

    def _require_mod2(self) -> None:
        if self.complex.ring is not Ring.MOD2:
            raise VariantMismatch(f"induced maps are computed over F2; {self.complex.name} is integral")

    # -- tables ---------------------------------------------------------------

    def table(self, variant: str, actions: bool = True, collapsed: bool = False) -> HomologyTable:
        """Per-bigrading ranks (and U/v action ranks) over the window."""
        cells = self.window_cells()
        self.compute(cells)
        dim = self.collapsed_dim if collapsed else self.dim
        rows, action_rows = [], []
        integral = self.complex.ring is Ring.INTEGERS
        for m, a2 in cells:
            rank = dim(m, a2)
            torsion = (self.collapsed_torsion(m, a2) if collapsed else self.torsion(m, a2)) if integral else []
            if not rank and not torsion:
                continue
            rows.append(BigradingRow(m=m, a=Fraction(a2, 2), rank=rank, torsion=list(torsion)))
            if not actions or integral or not rank:
                continue
            kinds = (["U"] if self.complex.num_u else []) + (["v"] if self.complex.has_v else [])
            for which in kinds:
                value = (
                    self.collapsed_power_rank(which, 1, m, a2) if collapsed else self.action_rank(which, m, a2)
                )
                action_rows.append(ActionRow(m=m, a=Fraction(a2, 2), which=which, rank=value))
        rows.sort(key=lambda row: (-row.a, -row.m))
        action_rows.sort(key=lambda row: (-row.a, -row.m, row.which))
        return HomologyTable(
            variant=variant,
            ring=self.complex.ring.value,
            window=self.window,
            rows=rows,
            actions=action_rows,
        )

    def dims(self, collapsed: bool = False) -> dict[Cell, int]:
        """Nonzero dimensions over the window."""
        cells = self.window_cells()
        self.compute(cells)
        dim = self.collapsed_dim if collapsed else self.dim
        return {cell: value for cell in cells if (value := dim(*cell))}
