"""Skein quadruples of grid diagrams at a crossing."""

import logging
from dataclasses import dataclass

from gridhom.grid.diagram import GridDiagram, component_count, marking_tables
from gridhom.grid.moves import column_relation
from gridhom.shared.errors import BadLocation, NotACrossing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkeinGeometry:
    """Where the distinguished markings of a quadruple sit.

    Cells are ``(column, row)`` in the coordinates of the diagram named in the
    field comment. ``c`` and ``c_prime`` are both the lattice point
    ``(column, row)`` of their own diagrams; states through it form I and I'.
    """

    column: int  # the crossing uses columns column-1 and column
    row: int  # X-markings of G+ sit in rows row and row-1
    c: tuple[int, int]  # on beta_i, in G+ / G0
    c_prime: tuple[int, int]  # on gamma_i, in G- / G0'
    x1: tuple[int, int]  # G- X-marking, G0' coordinates
    x2: tuple[int, int]  # G- X-marking, G0' coordinates
    y1: tuple[int, int]  # G0' X-marking
    y2: tuple[int, int]  # G0' X-marking
    o_columns: tuple[int, int, int, int]  # columns (in G+) of O1..O4
    plus_components: int
    zero_components: int


@dataclass(frozen=True)
class SkeinQuadruple:
    plus: GridDiagram
    minus: GridDiagram
    zero: GridDiagram
    zero_prime: GridDiagram
    geometry: SkeinGeometry


def _swap_columns(o: list[int], x: list[int], i: int) -> None:
    o[i - 1], o[i] = o[i], o[i - 1]
    x[i - 1], x[i] = x[i], x[i - 1]


def skein_quadruple(G_plus: GridDiagram, column: int) -> SkeinQuadruple:
    """Build G+, G-, G0 and G0' from a crossing of ``G_plus`` at ``column``.

    The crossing is given in normal form: the X-markings of columns
    ``column-1`` and ``column`` sit in adjacent rows j and j-1 and the two
    marking segments interleave. G0 exchanges the two X-markings, G- swaps the
    two columns of G+ and G0' swaps the two columns of G0.
    """
    n = G_plus.n
    if not 1 <= column <= n - 1:
        raise BadLocation(f"crossing column {column} outside 1..{n - 1}")
    j = G_plus.x_rows[column - 1]
    if G_plus.x_rows[column] != j - 1 or j < 1:
        raise NotACrossing(
            f"X-markings of columns {column - 1},{column} are in rows "
            f"{G_plus.x_rows[column - 1]},{G_plus.x_rows[column]}, expected j, j-1"
        )
    if column_relation(G_plus, column) != "interleaved":
        raise NotACrossing(f"columns {column - 1},{column} do not interleave")

    name = G_plus.name or "link"
    o = list(G_plus.o_rows)
    x = list(G_plus.x_rows)
    x0 = list(x)
    x0[column - 1], x0[column] = j - 1, j
    zero = GridDiagram(n=n, o_rows=tuple(o), x_rows=tuple(x0), name=f"{name}_0")

    om, xm = list(o), list(x)
    _swap_columns(om, xm, column)
    minus = GridDiagram(n=n, o_rows=tuple(om), x_rows=tuple(xm), name=f"{name}_minus")

    oz, xz = list(o), list(x0)
    _swap_columns(oz, xz, column)
    zero_prime = GridDiagram(n=n, o_rows=tuple(oz), x_rows=tuple(xz), name=f"{name}_0_prime")

    plus = G_plus if G_plus.name else GridDiagram(n=n, o_rows=G_plus.o_rows, x_rows=G_plus.x_rows, name=name)

    o_col = marking_tables(G_plus).o_col
    geometry = SkeinGeometry(
        column=column,
        row=j,
        c=(column, j),
        c_prime=(column, j),
        x1=(column, j),
        x2=(column - 1, j - 1),
        y1=(column - 1, j),
        y2=(column, j - 1),
        o_columns=(o_col[j], o_col[j - 1], column - 1, column),
        plus_components=component_count(G_plus),
        zero_components=component_count(zero),
    )
    if abs(geometry.zero_components - geometry.plus_components) != 1:
        raise NotACrossing("resolution did not change the component count by one")
    logger.info(
        "[skein_quadruple] %s at column %d: l=%d, l0=%d",
        name,
        column,
        geometry.plus_components,
        geometry.zero_components,
    )
    return SkeinQuadruple(plus=plus, minus=minus, zero=zero, zero_prime=zero_prime, geometry=geometry)
