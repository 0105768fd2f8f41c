from gridhom.complex.boundary import boundary, d1_operator, homotopy_H, partial_k, rectangle_operator, x_marking_of
from gridhom.complex.freecomplex import (
    FreeComplex,
    FreeMap,
    MappingCone,
    compose_maps,
    grid_complex,
    variant_complex,
)
from gridhom.complex.polynomial import ChainElement, Monomial, Ring, sum_elements
from gridhom.complex.variants import GC_HAT, GC_MINUS, GCL, GCL_SIGNED_Z, ComplexVariant
from gridhom.complex.verify import verify_identities

__all__ = [
    "GCL",
    "GCL_SIGNED_Z",
    "GC_HAT",
    "GC_MINUS",
    "ChainElement",
    "ComplexVariant",
    "FreeComplex",
    "FreeMap",
    "MappingCone",
    "Monomial",
    "Ring",
    "boundary",
    "compose_maps",
    "d1_operator",
    "grid_complex",
    "homotopy_H",
    "partial_k",
    "rectangle_operator",
    "sum_elements",
    "variant_complex",
    "verify_identities",
    "x_marking_of",
]
