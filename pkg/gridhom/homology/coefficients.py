"""Universal-coefficient comparison between integral and mod 2 GCL."""

import logging
from fractions import Fraction

from gridhom.complex.variants import GCL, GCL_SIGNED_Z
from gridhom.grid.diagram import GridDiagram
from gridhom.homology.compute import engine_for
from gridhom.shared.schemas import VerificationReport, Violation, Window

logger = logging.getLogger(__name__)

SUITE = "universal_coefficients"


def uct_check(G: GridDiagram, S=None, window: Window | None = None) -> VerificationReport:
    """dim H(m; F2) = rank H(m; Z) + t(m) + t(m - 1) on every window cell of the collapsed complexes.

    t counts torsion summands of even order. The mod 2 side is computed from the
    unsigned complex, so the check also ties the signed differential to it.
    """
    mod2 = engine_for(G, GCL, window=window)
    integral = engine_for(G, GCL_SIGNED_Z, S, window=window)
    mod2.compute()
    integral.compute(mod2.window_cells())
    report = VerificationReport(suite=SUITE, diagrams=[str(G)])

    def even(m: int, a2: int) -> int:
        return sum(1 for q in integral.collapsed_torsion(m, a2) if q % 2 == 0)

    for m, a2 in mod2.window_cells():
        expected = integral.collapsed_dim(m, a2) + even(m, a2) + even(m - 1, a2)
        actual = mod2.collapsed_dim(m, a2)
        report.checked += 1
        if actual != expected:
            detail = f"F2 dimension {actual}, integral rank plus 2-torsion gives {expected}"
            logger.warning("[uct_check] %s at (%d, %s): %s", G, m, Fraction(a2, 2), detail)
            report.violations.append(Violation(suite=SUITE, generator=f"({m}, {Fraction(a2, 2)})", detail=detail))
    report.tables = [
        mod2.table(GCL.label, actions=False, collapsed=True),
        integral.table(GCL_SIGNED_Z.label, actions=False, collapsed=True),
    ]
    return report
