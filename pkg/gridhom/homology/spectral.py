"""Pages of the spectral sequence of the v-power filtration on GCL over F2.

F^p is spanned by the monomials with v-exponent at least p. Pages are indexed
so that E_2 is the homology of the associated graded complex, GH⁻[v], and d_r
raises the filtration by r - 1.
"""

import logging
from fractions import Fraction

import numpy as np

from gridhom.complex.variants import GCL
from gridhom.grid.diagram import GridDiagram
from gridhom.homology.compute import engine_for
from gridhom.homology.engine import HomologyEngine, divide_by_w
from gridhom.homology.linalg import GF2Basis, gf2_apply, gf2_kernel
from gridhom.shared.errors import WindowNotStabilized
from gridhom.shared.schemas import SpectralPage, SpectralRow, Window

logger = logging.getLogger(__name__)

INFINITY = "infinity"


def _filtered_cycles(rows: np.ndarray, source_p: list[int], target_p: list[int], p: int, s: int) -> np.ndarray:
    """Z_s^p: chains in F^p whose boundary has no component below filtration p + s."""
    chosen = [k for k, q in enumerate(source_p) if q >= p]
    low = [k for k, q in enumerate(target_p) if q < p + s]
    kernel = gf2_kernel(rows[chosen][:, low])
    full = np.zeros((len(kernel), len(source_p)), dtype=np.uint8)
    full[:, chosen] = kernel
    return full


class _Cell:
    def __init__(self, engine: HomologyEngine, m: int, a2: int):
        self.p = [exps[-1] for _, exps in engine.slice(m, a2).basis]
        self.p_below = [exps[-1] for _, exps in engine.slice(m - 1, a2).basis]
        self.p_above = [exps[-1] for _, exps in engine.slice(m + 1, a2).basis]
        self.out_rows = engine.rows_mod2(m, a2)
        self.in_rows = engine.rows_mod2(m + 1, a2)
        self.pages: dict[int, dict[int, int]] = {}

    def dims(self, s: int) -> dict[int, int]:
        """dim E^p for standard index s = r - 1, for every filtration level present."""
        if s in self.pages:
            return self.pages[s]
        result = {}
        for p in sorted(set(self.p)):
            cycles = _filtered_cycles(self.out_rows, self.p, self.p_below, p, s)
            smaller = _filtered_cycles(self.out_rows, self.p, self.p_below, p + 1, s - 1)
            incoming = _filtered_cycles(self.in_rows, self.p_above, self.p, p - s + 1, s - 1)
            denominator = GF2Basis(len(self.p), smaller)
            for z in incoming:
                denominator.add(gf2_apply(self.in_rows, z))
            value = len(cycles) - len(denominator)
            if value:
                result[p] = value
        self.pages[s] = result
        return result


def _page_function(engine: HomologyEngine, s: int, cache: dict[tuple[int, int], _Cell]):
    def collapsed(p: int):
        def value(m: int, a2: int) -> int:
            if (m, a2) not in cache:
                cache[(m, a2)] = _Cell(engine, m, a2)
            return cache[(m, a2)].dims(s).get(p, 0)

        return value

    return collapsed


def spectral_pages(G: GridDiagram, r_max: int = 4, window: Window | None = None) -> list[SpectralPage]:
    """E_2 .. E_rmax and E_∞ over the window, reduced by the W factor of the collapse."""
    engine = engine_for(G, GCL, window=window)
    engine.compute()
    cells = engine.window_cells()
    s_inf = (engine.window.band_max + 1 - engine.delta_min) // 2 + 2
    cache: dict[tuple[int, int], _Cell] = {}
    levels = range(0, (engine.window.band_max - engine.delta_min) // 2 + 1)

    def page(s: int) -> dict[tuple[int, int, int], int]:
        collapsed = _page_function(engine, s, cache)
        dims = {}
        for p in levels:
            reduced = divide_by_w(collapsed(p), engine.complex.w_power, engine.a2_max, engine.delta_min)
            for m, a2 in cells:
                if value := reduced(m, a2):
                    dims[(m, a2, p)] = value
        return dims

    finite = {r: page(r - 1) for r in range(2, r_max + 1)}
    infinite = page(s_inf)
    for m, a2 in cells:
        total = sum(value for (mm, aa, _), value in infinite.items() if (mm, aa) == (m, a2))
        if total != engine.dim(m, a2):
            raise WindowNotStabilized(
                f"E_inf at ({m}, {Fraction(a2, 2)}) has dimension {total}, homology has {engine.dim(m, a2)}"
            )
    collapsed_at = next((r for r, dims in finite.items() if dims == infinite), None)

    def rows(dims):
        out = [SpectralRow(m=m, a=Fraction(a2, 2), p=p, dim=value) for (m, a2, p), value in dims.items()]
        return sorted(out, key=lambda row: (-row.a, -row.m, row.p))

    pages = [SpectralPage(r=r, dims=rows(dims), collapsed_at=collapsed_at) for r, dims in finite.items()]
    pages.append(SpectralPage(r=INFINITY, dims=rows(infinite), collapsed_at=collapsed_at))
    logger.info("[spectral_pages] %s: collapsed_at=%s", G, collapsed_at)
    return pages
