from gridhom.homology.coefficients import uct_check
from gridhom.homology.compute import (
    GradedSlice,
    action_rank,
    engine_for,
    homology_at,
    homology_table,
    slice_basis,
)
from gridhom.homology.del1 import del1_star
from gridhom.homology.engine import HomologyEngine, default_window, divide_by_w
from gridhom.homology.spectral import spectral_pages
from gridhom.homology.structure import decompose_over_U, expand, invariants, tau

__all__ = [
    "GradedSlice",
    "HomologyEngine",
    "action_rank",
    "decompose_over_U",
    "default_window",
    "del1_star",
    "divide_by_w",
    "engine_for",
    "expand",
    "homology_at",
    "homology_table",
    "invariants",
    "slice_basis",
    "spectral_pages",
    "tau",
    "uct_check",
]
