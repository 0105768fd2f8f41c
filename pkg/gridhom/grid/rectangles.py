"""Rectangles, long rectangles and the polygons derived from them.

Every polygon is stored as a lifted rectangle (west column, south row, width,
height) in the universal cover, projected back to the torus, plus optional
signed corrections at single squares. A rectangle goes from ``source`` to
``target`` with the source points at its south-west and north-east corners.
"""

from dataclasses import dataclass
from typing import NamedTuple

from gridhom.grid.diagram import GridDiagram, marking_tables
from gridhom.grid.states import GridState

RECTANGLE = "rectangle"
LONG_RECTANGLE = "long_rectangle"
PENTAGON = "pentagon"
LONG_PENTAGON = "long_pentagon"
HEXAGON = "hexagon"
LONG_HEXAGON = "long_hexagon"

RECTANGLE_KINDS = (RECTANGLE, LONG_RECTANGLE)


def _wrap_count(length: int, offset: int, n: int) -> int:
    """How many times a lifted interval of ``length`` squares covers ``offset``."""
    if offset > length - 1:
        return 0
    return (length - 1 - offset) // n + 1


@dataclass(frozen=True, slots=True)
class RectLike:
    kind: str
    source: GridState
    target: GridState
    west: int
    south: int
    width: int
    height: int
    # (column, row, delta) corrections to the rectangle count
    patch: tuple[tuple[int, int, int], ...] = ()
    degree: int | None = None  # fixed 𝒯 for polygons, None to derive it

    @property
    def n(self) -> int:
        return len(self.source)

    @property
    def east(self) -> int:
        return (self.west + self.width) % self.n

    @property
    def north(self) -> int:
        return (self.south + self.height) % self.n

    @property
    def is_long(self) -> bool:
        return self.kind.startswith("long")

    def mult(self, c: int, r: int) -> int:
        n = self.n
        m = _wrap_count(self.width, (c - self.west) % n, n) * _wrap_count(self.height, (r - self.south) % n, n)
        for pc, pr, delta in self.patch:
            if (pc, pr) == (c, r):
                m += delta
        return m

    def mult_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Local multiplicities indexed ``[column][row]``."""
        return tuple(tuple(self.mult(c, r) for r in range(self.n)) for c in range(self.n))

    def interior_points(self) -> int:
        """Source points strictly inside a short rectangle."""
        n = self.n
        count = 0
        for k, row in enumerate(self.source):
            dc = (k - self.west) % n
            dr = (row - self.south) % n
            if 0 < dc < self.width and 0 < dr < self.height:
                count += 1
        return count

    def t_degree(self) -> int:
        if self.degree is not None:
            return self.degree
        if self.is_long:
            return 1
        return self.interior_points()

    @property
    def geometry(self) -> dict[str, tuple[int, int]]:
        return {
            "south_west": (self.west, self.south),
            "north_east": (self.east, self.north),
            "lift_size": (self.width, self.height),
        }


class Multiplicities(NamedTuple):
    o: tuple[int, ...]  # O_c(r), indexed by column of the O
    x: tuple[int, ...]  # X_c(r), indexed by column of the X
    interior_points: int
    t: int


def multiplicities(G: GridDiagram, r: RectLike) -> Multiplicities:
    o = tuple(r.mult(c, G.o_rows[c]) for c in range(G.n))
    x = tuple(r.mult(c, G.x_rows[c]) for c in range(G.n))
    interior = 0 if r.is_long else r.interior_points()
    return Multiplicities(o, x, interior, r.t_degree())


def _swap(x: GridState, i: int, j: int) -> GridState:
    y = list(x)
    y[i], y[j] = y[j], y[i]
    return tuple(y)


def short_rectangle(x: GridState, west: int, east: int) -> RectLike:
    """The rectangle from ``x`` with corners on columns ``west`` and ``east``."""
    n = len(x)
    return RectLike(
        kind=RECTANGLE,
        source=x,
        target=_swap(x, west, east),
        west=west,
        south=x[west],
        width=(east - west) % n,
        height=(x[east] - x[west]) % n,
    )


def vertical_long_rectangle(x: GridState, column: int) -> RectLike:
    """Width-one rectangle between ``column`` and the next, wrapping once vertically."""
    n = len(x)
    east = (column + 1) % n
    return RectLike(
        kind=LONG_RECTANGLE,
        source=x,
        target=_swap(x, column, east),
        west=column,
        south=x[column],
        width=1,
        height=(x[east] - x[column]) % n + n,
    )


def horizontal_long_rectangle(x: GridState, row: int) -> RectLike:
    """Height-one rectangle between ``row`` and the next, wrapping once horizontally."""
    n = len(x)
    inverse = [0] * n
    for c, r in enumerate(x):
        inverse[r] = c
    p, q = inverse[row], inverse[(row + 1) % n]
    return RectLike(
        kind=LONG_RECTANGLE,
        source=x,
        target=_swap(x, p, q),
        west=p,
        south=row,
        width=(q - p) % n + n,
        height=1,
    )


def rectangles_from(
    G: GridDiagram,
    x: GridState,
    include_long: bool = False,
    horizontal_long: bool = True,
) -> list[RectLike]:
    """All rectangles leaving ``x``; long ones on request."""
    n = G.n
    rects = [short_rectangle(x, i, j) for i in range(n) for j in range(n) if i != j]
    if include_long and n >= 2:
        rects.extend(vertical_long_rectangle(x, c) for c in range(n))
        if horizontal_long:
            rects.extend(horizontal_long_rectangle(x, r) for r in range(n))
    return rects


def rectangles_between(
    G: GridDiagram,
    x: GridState,
    y: GridState,
    include_long: bool = False,
    horizontal_long: bool = True,
) -> list[RectLike]:
    diff = [k for k in range(G.n) if x[k] != y[k]]
    if len(diff) != 2:
        return []
    i, j = diff
    if x[i] != y[j] or x[j] != y[i]:
        return []
    rects = [short_rectangle(x, i, j), short_rectangle(x, j, i)]
    if include_long:
        n = G.n
        for c in (i, j):
            if {c, (c + 1) % n} == {i, j}:
                rects.append(vertical_long_rectangle(x, c))
        if horizontal_long:
            for r in (x[i], x[j]):
                if {r, (r + 1) % n} == {x[i], x[j]}:
                    rects.append(horizontal_long_rectangle(x, r))
    return rects


def is_x_free(G: GridDiagram, r: RectLike) -> bool:
    return all(r.mult(c, G.x_rows[c]) == 0 for c in range(G.n))


@dataclass(frozen=True, slots=True)
class Domain:
    """A formal sum of squares going from ``source`` to ``target``."""

    source: GridState
    target: GridState
    mult: tuple[tuple[int, ...], ...]


def compose(first: RectLike, second: RectLike) -> Domain:
    """The juxtaposition ``first * second``; ``second`` must start where ``first`` ends."""
    a = first.mult_matrix()
    b = second.mult_matrix()
    summed = tuple(tuple(p + q for p, q in zip(col_a, col_b)) for col_a, col_b in zip(a, b))
    return Domain(first.source, second.target, summed)


def marking_columns_in_row(G: GridDiagram, row: int) -> tuple[int, int]:
    """Columns of the (O, X) markings in ``row``."""
    tables = marking_tables(G)
    return tables.o_col[row], tables.x_col[row]
