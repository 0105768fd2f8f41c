"""F[U]-module structure along each band, and the τ-type invariants read off it."""

import logging
from fractions import Fraction

from gridhom.complex.variants import GC_MINUS, GCL
from gridhom.grid.diagram import GridDiagram
from gridhom.homology.compute import engine_for, knot_only
from gridhom.homology.engine import HomologyEngine
from gridhom.shared.errors import WindowNotStabilized
from gridhom.shared.schemas import InvariantsReport, TorsionPiece, UModuleDecomposition, Window

logger = logging.getLogger(__name__)


def _levels(engine: HomologyEngine) -> list[int]:
    """Alexander levels (as a2) of the window, top first."""
    w = engine.window
    parities = {a2 % 2 for a2 in engine.complex.alex2}
    return [a2 for a2 in range(int(2 * w.a_max), int(2 * w.a_min) - 1, -1) if a2 % 2 in parities]


def _check_stabilized(engine: HomologyEngine) -> int:
    """Bottom level of the window, once U is known to act isomorphically there."""
    bottom = _levels(engine)[-1]
    if bottom > engine.a2_min:
        raise WindowNotStabilized(
            f"window floor a={Fraction(bottom, 2)} sits above the lowest generator grading "
            f"a={Fraction(engine.a2_min, 2)}; raise GRIDHOM_WINDOW_MARGIN"
        )
    return bottom


def u_summands(engine: HomologyEngine, band: int) -> tuple[list[tuple[int, int]], list[tuple[int, int, int]]]:
    """Cyclic F[U]-summands of the reduced homology along one band.

    Returns (towers, torsion) with towers as (m, a2) of their tops and torsion
    as (m, a2, length). A summand whose top is at a and which is still alive at
    the window floor is a tower. The count of summands topped at a with length
    at least L is rank(U^(L-1) at a) - rank(U^L at a + 1).
    """
    bottom = _check_stabilized(engine)
    levels = _levels(engine)

    def rank(power: int, a2: int) -> int:
        if a2 > engine.a2_max or a2 - 2 * power < bottom:
            return 0
        m = band + a2
        if power == 0:
            return engine.dim(m, a2)
        return engine.power_rank("U", power, m, a2)

    towers: list[tuple[int, int]] = []
    torsion: list[tuple[int, int, int]] = []
    for a2 in levels:
        if not engine.dim(band + a2, a2):
            continue
        reach = (a2 - bottom) // 2 + 1

        def at_least(length: int) -> int:
            return rank(length - 1, a2) - rank(length, a2 + 2)

        for length in range(1, reach):
            count = at_least(length) - at_least(length + 1)
            torsion.extend([(band + a2, a2, length)] * count)
        towers.extend([(band + a2, a2)] * at_least(reach))
    return towers, torsion


def _bands(engine: HomologyEngine) -> range:
    return range(engine.window.band_min, engine.window.band_max + 1)


def decompose_over_U(G: GridDiagram, window: Window | None = None) -> UModuleDecomposition:
    """GH⁻ of a knot as F[U]_(tower) ⊕ torsion pieces F[U]/U^length."""
    knot_only(G, "decompose_over_U")
    engine = engine_for(G, GC_MINUS, window=window)
    engine.compute()
    towers: list[tuple[int, int]] = []
    pieces: list[TorsionPiece] = []
    for band in _bands(engine):
        band_towers, band_torsion = u_summands(engine, band)
        towers.extend(band_towers)
        pieces.extend(TorsionPiece(m=m, a=Fraction(a2, 2), length=length) for m, a2, length in band_torsion)
    if len(towers) != 1:
        raise WindowNotStabilized(f"expected one U-tower for a knot, found {len(towers)} in {engine.window}")
    m, a2 = towers[0]
    pieces.sort(key=lambda p: (-p.a, -p.m, p.length))
    logger.info("[decompose_over_U] %s: tower at (%d, %s), %d torsion pieces", G, m, Fraction(a2, 2), len(pieces))
    return UModuleDecomposition(tower=(m, Fraction(a2, 2)), torsion=pieces)


def expand(decomposition: UModuleDecomposition, window: Window) -> dict[tuple[int, Fraction], int]:
    """Per-bigrading dimensions of a decomposition, restricted to ``window``."""
    dims: dict[tuple[int, Fraction], int] = {}

    def put(m: int, a: Fraction) -> None:
        if window.contains(m, a):
            dims[(m, a)] = dims.get((m, a), 0) + 1

    if decomposition.tower is not None:
        m, a = decomposition.tower
        k = 0
        while a - k >= window.a_min:
            put(m - 2 * k, a - k)
            k += 1
    for piece in decomposition.torsion:
        for k in range(piece.length):
            put(piece.m - 2 * k, piece.a - k)
    return dims


def tau(G: GridDiagram, window: Window | None = None) -> int:
    tower = decompose_over_U(G, window).tower
    return int(-tower[1])


def _max_alexander(engine: HomologyEngine, predicate) -> int | None:
    best = None
    for m, a2 in engine.window_cells():
        if best is not None and a2 <= best:
            continue
        if engine.dim(m, a2) and predicate(m, a2):
            best = a2
    return best


def invariants(G: GridDiagram, window: Window | None = None) -> InvariantsReport:
    """τ from GH⁻, and τ⁺, τ⁺_U, ρ from GHL over F2."""
    knot_only(G, "invariants")
    tau_value = tau(G, window)
    ghl = engine_for(G, GCL, window=window)
    ghl.compute()
    bottom = _check_stabilized(ghl)
    # bands at or above δ_max + 1 are v-periodic
    v_floor = ghl.delta_max + 1
    if ghl.window.band_max < v_floor:
        raise WindowNotStabilized(f"band range of {ghl.window} stops below the v-periodic band {v_floor}")

    def u_free(m: int, a2: int) -> bool:
        depth = (a2 - bottom) // 2
        return depth == 0 or ghl.power_rank("U", depth, m, a2) > 0

    def v_free(m: int, a2: int) -> bool:
        band = m - a2
        steps = max(0, (v_floor - band + 1) // 2)
        return steps == 0 or ghl.power_rank("v", steps, m, a2) > 0

    top_u = _max_alexander(ghl, u_free)
    top_uv = _max_alexander(ghl, lambda m, a2: u_free(m, a2) and v_free(m, a2))
    if top_u is None or top_uv is None:
        raise WindowNotStabilized(f"no U-nontorsion class of GHL({G}) in {ghl.window}")
    rho = 0
    for band in _bands(ghl):
        _, torsion = u_summands(ghl, band)
        rho = max([rho, *(length for _, _, length in torsion)])
    report = InvariantsReport(
        tau=tau_value,
        tau_plus=int(-Fraction(top_uv, 2)),
        tau_plus_u=int(-Fraction(top_u, 2)),
        rho=rho,
    )
    logger.info("[invariants] %s: %s", G, report.model_dump())
    return report
