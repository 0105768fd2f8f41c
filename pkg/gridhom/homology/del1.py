"""The endomorphism ∂1* of GH⁻ and GH-hat induced by the v¹ part of the enhanced differential."""

import logging
from collections.abc import Callable
from fractions import Fraction

import numpy as np

from gridhom.complex.freecomplex import FreeComplex, FreeMap, Vector, grid_complex
from gridhom.complex.variants import GCL
from gridhom.grid.diagram import GridDiagram
from gridhom.homology.compute import engine_for
from gridhom.homology.engine import HomologyEngine, divide_by_w
from gridhom.homology.linalg import gf2_apply, gf2_rank
from gridhom.homology.structure import decompose_over_U
from gridhom.shared import config
from gridhom.shared.errors import InconsistentInducedMap
from gridhom.shared.schemas import BigradingRow, Del1Entry, Del1Report, Window

logger = logging.getLogger(__name__)

DEL1_DEGREE = (-3, 0)


def _split(enhanced: FreeComplex) -> tuple[FreeComplex, FreeMap]:
    """(C, ∂0) and ∂1 as a chain map of C, from the v-graded pieces of an enhanced complex."""
    base = enhanced.piece(0)
    d1 = enhanced.piece(1)
    return base, FreeMap(base, base, DEL1_DEGREE, d1.terms, name="d1")


def _random_invertible(size: int, rng: np.random.Generator) -> np.ndarray:
    """A random invertible matrix over F2."""
    while True:
        rows = rng.integers(0, 2, (size, size), dtype=np.uint8)
        if gf2_rank(rows) == size:
            return rows


def _matrices(engine: HomologyEngine, d1: FreeMap, rng: np.random.Generator) -> list[Del1Entry]:
    """∂1* per cell, cross-checked against a second choice of representatives."""
    entries = []
    dm, da2 = DEL1_DEGREE
    for m, a2 in engine.window_cells():
        source = engine.cell(m, a2)
        target = (m + dm, a2 + da2)
        if not source.dim or not engine.cell(*target).dim:
            continue
        matrix = engine.induced_matrix(d1, (m, a2), target)
        # second basis: z'_k = sum_j A_kj z_j + (random boundary)
        change = _random_invertible(source.dim, rng)
        reps = np.array(source.reps, dtype=np.uint8)
        transposed = np.array(matrix, dtype=np.uint8).T
        dst = engine.cell(*target)
        src_slice = engine.slice(m, a2)
        dst_slice = engine.slice(*target)
        for row in change:
            z = gf2_apply(reps, row)
            for b in source.boundaries.rows:
                if rng.integers(0, 2):
                    z ^= b
            image = dst_slice.to_bits(d1.apply(src_slice.to_vector(z)))
            residue, tag = dst.quotient.reduce(image)
            expected = gf2_apply(transposed, row)
            if residue.any() or not np.array_equal(tag[: dst.dim], expected):
                raise InconsistentInducedMap(f"∂1* at ({m}, {Fraction(a2, 2)}) depends on the representative")
        entries.append(Del1Entry(m=m, a=Fraction(a2, 2), matrix=matrix))
    return entries


def _nonzero_class(engine: HomologyEngine, cell: tuple[int, int], cycle: Vector) -> bool:
    dst = engine.cell(*cell)
    if not dst.dim:
        return False
    return not dst.boundaries.contains(engine.slice(*cell).to_bits(cycle, f"{cell}"))


def _tower_generator(engine: HomologyEngine, cell: tuple[int, int], depth: int) -> Vector | None:
    """A cycle at ``cell`` whose class survives U^depth.

    Among the cell's representatives the first one that is not U-torsion is
    taken; any two choices differ by torsion and W-shifted classes.
    """
    bottom = (cell[0] - 2 * depth, cell[1] - 2 * depth)
    u = engine.power_map("U", depth)
    source = engine.slice(*cell)
    for z in engine.cell(*cell).reps:
        cycle = source.to_vector(z)
        if _nonzero_class(engine, bottom, u(cycle)):
            return cycle
    return None


def _compose(first: FreeMap | Callable, second: FreeMap | Callable) -> Callable:
    f = first.apply if isinstance(first, FreeMap) else first
    g = second.apply if isinstance(second, FreeMap) else second
    return lambda vector: g(f(vector))


def del1_star(G: GridDiagram, window: Window | None = None, seed: int | None = None) -> Del1Report:
    """Matrices, homology, image and U-behaviour of ∂1* on the collapsed GH⁻ and GH-hat.

    The maps are reported on the homology of the fully collapsed complexes,
    where ∂1* acts as ∂1* ⊗ id on GH ⊗ W; homology and image dimensions are
    divided by the W factor.
    """
    rng = np.random.default_rng(config.seed() if seed is None else seed)
    enhanced = engine_for(G, GCL, window=window).complex
    base, d1 = _split(enhanced)
    engine = HomologyEngine(base, window=window)
    engine.compute()
    hat_enhanced = grid_complex(G, num_u=0, enhanced=True, name=f"{G}:tilde_GCL")
    hat_base, hat_d1 = _split(hat_enhanced)
    hat_engine = HomologyEngine(hat_base, window=window)
    hat_engine.compute()

    report = Del1Report(gh_minus=_matrices(engine, d1, rng), gh_hat=_matrices(hat_engine, hat_d1, rng))
    report.identically_zero = all(not any(any(row) for row in e.matrix) for e in report.gh_minus + report.gh_hat)

    dm, da2 = DEL1_DEGREE
    cells = engine.window_cells()
    bottom = int(2 * engine.window.a_min)

    def out_rank(m: int, a2: int) -> int:
        return engine.induced_rank(d1, (m, a2), (m + dm, a2 + da2))

    def homology_dim(m: int, a2: int) -> int:
        return engine.collapsed_dim(m, a2) - out_rank(m, a2) - out_rank(m - dm, a2 - da2)

    homology = divide_by_w(homology_dim, base.w_power, engine.a2_max, engine.delta_min)
    image = divide_by_w(lambda m, a2: out_rank(m - dm, a2 - da2), base.w_power, engine.a2_max, engine.delta_min)
    for m, a2 in cells:
        if value := homology(m, a2):
            report.homology.append(BigradingRow(m=m, a=Fraction(a2, 2), rank=value))
        if value := image(m, a2):
            report.image.append(BigradingRow(m=m, a=Fraction(a2, 2), rank=value))

    for m, a2 in cells:
        if not engine.collapsed_dim(m, a2):
            continue
        square = _compose(d1, d1)
        if engine.induced_rank(square, (m, a2), (m + 2 * dm, a2 + 2 * da2)):
            report.squares_to_zero = False
        target = (m + dm, a2 + da2)
        if target[1] < bottom or not out_rank(m, a2):
            continue
        depth = (target[1] - bottom) // 2
        deep = engine.induced_rank(
            _compose(d1, engine.power_map("U", depth)), (m, a2), (target[0] - 2 * depth, bottom)
        )
        if deep:
            report.image_u_torsion = False
        for k in range(depth, -1, -1):
            if engine.induced_rank(_compose(d1, engine.power_map("U", k)), (m, a2), (target[0] - 2 * k, target[1] - 2 * k)):
                current = report.max_u_power_on_image
                report.max_u_power_on_image = k if current is None else max(current, k)
                break

    tower = decompose_over_U(G, window).tower
    if tower is not None:
        # the tower top sits at the same place in the collapsed homology
        tm, ta2 = tower[0], int(2 * tower[1])
        depth = (ta2 - bottom) // 2
        zeta = _tower_generator(engine, (tm, ta2), depth)
        if zeta is not None:
            d1_zeta = d1.apply(zeta)
            for k in range(depth + 1):
                target = (tm + dm - 2 * k, ta2 + da2 - 2 * k)
                if _nonzero_class(engine, target, engine.power_map("U", k)(d1_zeta)):
                    report.max_u_power_on_tower = k
    logger.info(
        "[del1_star] %s: zero=%s squares_to_zero=%s image_u_torsion=%s",
        G,
        report.identically_zero,
        report.squares_to_zero,
        report.image_u_torsion,
    )
    return report
