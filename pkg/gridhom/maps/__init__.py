from gridhom.maps.domains import add_vectors, check_generators, degree_violations, domain_map, generator_indices
from gridhom.maps.skein import ExactTriangle, SkeinMaps, exact_triangle, skein_les_check, skein_maps, skein_maps_suite
from gridhom.maps.stabilization import Stabilization, stabilization_cone_check, stabilization_maps, stabilization_of
from gridhom.maps.superimposed import (
    PentagonSuite,
    SuperimposedDiagram,
    closest_point,
    commutation_check,
    hexagons,
    pentagon_suite,
    pentagons,
    reverse_pentagons,
    superimpose,
)

__all__ = [
    "ExactTriangle",
    "PentagonSuite",
    "SkeinMaps",
    "Stabilization",
    "SuperimposedDiagram",
    "add_vectors",
    "check_generators",
    "closest_point",
    "commutation_check",
    "degree_violations",
    "domain_map",
    "exact_triangle",
    "generator_indices",
    "hexagons",
    "pentagon_suite",
    "pentagons",
    "reverse_pentagons",
    "skein_les_check",
    "skein_maps",
    "skein_maps_suite",
    "stabilization_cone_check",
    "stabilization_maps",
    "stabilization_of",
    "superimpose",
]
