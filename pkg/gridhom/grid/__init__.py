from gridhom.grid.diagram import (
    GridDiagram,
    component_count,
    diagram_from_document,
    link_components,
    marking_tables,
    parse_diagram,
    serialize_diagram,
    transpose,
)
from gridhom.grid.library import LibraryEntry, builtin, library, resolve_diagram
from gridhom.grid.moves import apply_move, legal_moves, random_move_sequence
from gridhom.grid.rectangles import (
    Domain,
    Multiplicities,
    RectLike,
    multiplicities,
    rectangles_between,
    rectangles_from,
)
from gridhom.grid.skein import SkeinGeometry, SkeinQuadruple, skein_quadruple
from gridhom.grid.states import Bigrading, GridState, enumerate_states, grading

__all__ = [
    "Bigrading",
    "Domain",
    "GridDiagram",
    "GridState",
    "LibraryEntry",
    "Multiplicities",
    "RectLike",
    "SkeinGeometry",
    "SkeinQuadruple",
    "apply_move",
    "builtin",
    "component_count",
    "diagram_from_document",
    "enumerate_states",
    "grading",
    "legal_moves",
    "library",
    "link_components",
    "marking_tables",
    "multiplicities",
    "parse_diagram",
    "random_move_sequence",
    "rectangles_between",
    "rectangles_from",
    "resolve_diagram",
    "serialize_diagram",
    "skein_quadruple",
    "transpose",
]
