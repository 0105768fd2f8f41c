"""Grid moves: commutations, switches and X:SW (de)stabilizations."""

import logging
from typing import Literal, NamedTuple

import numpy as np

from gridhom.grid.diagram import GridDiagram, transpose
from gridhom.shared.errors import BadLocation, IllegalMove

logger = logging.getLogger(__name__)

MoveKind = Literal[
    "commutation",
    "switch",
    "row_commutation",
    "row_switch",
    "stabilize_XSW",
    "destabilize_XSW",
]
MOVE_KINDS: tuple[str, ...] = MoveKind.__args__


class AppliedMove(NamedTuple):
    kind: str
    location: int
    result: GridDiagram


def _segment(G: GridDiagram, c: int) -> tuple[int, int]:
    a, b = G.o_rows[c], G.x_rows[c]
    return (a, b) if a < b else (b, a)


def column_relation(G: GridDiagram, i: int) -> str:
    """Classify the marking segments of columns i-1 and i.

    Returns "disjoint", "nested", "shared_vertex", "identical" or "interleaved".
    """
    (a1, b1), (a2, b2) = _segment(G, i - 1), _segment(G, i)
    shared = len({a1, b1} & {a2, b2})
    if shared == 2:
        return "identical"
    if shared == 1:
        return "shared_vertex"
    if b1 < a2 or b2 < a1:
        return "disjoint"
    if (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2):
        return "nested"
    return "interleaved"


def _swap_columns(G: GridDiagram, i: int) -> GridDiagram:
    o = list(G.o_rows)
    x = list(G.x_rows)
    o[i - 1], o[i] = o[i], o[i - 1]
    x[i - 1], x[i] = x[i], x[i - 1]
    return GridDiagram(n=G.n, o_rows=tuple(o), x_rows=tuple(x), name=G.name)


def _check_column_index(G: GridDiagram, i: int) -> None:
    if not 1 <= i <= G.n - 1:
        raise BadLocation(f"column exchange index {i} outside 1..{G.n - 1}")


def commute_columns(G: GridDiagram, i: int) -> GridDiagram:
    """Exchange columns i-1 and i when their segments are disjoint or nested."""
    _check_column_index(G, i)
    relation = column_relation(G, i)
    if relation not in ("disjoint", "nested"):
        raise IllegalMove(f"columns {i - 1},{i} are {relation}; commutation needs disjoint or nested segments")
    return _swap_columns(G, i)


def switch_columns(G: GridDiagram, i: int) -> GridDiagram:
    """Exchange columns i-1 and i when their segments share exactly one vertex."""
    _check_column_index(G, i)
    relation = column_relation(G, i)
    if relation != "shared_vertex":
        raise IllegalMove(f"columns {i - 1},{i} are {relation}; a switch needs exactly one shared vertex")
    return _swap_columns(G, i)


def stabilize_xsw(G: GridDiagram, column: int) -> GridDiagram:
    """X:SW stabilization at the X in ``column``.

    The X is replaced by the 2x2 block ``X1 O1 / . X2``: a new column and row
    are inserted east of and above it, and the south-west square stays empty
    of new markings.
    """
    if not 0 <= column < G.n:
        raise BadLocation(f"no column {column} in a grid of size {G.n}")
    rx = G.x_rows[column]

    def col(p: int) -> int:
        return p if p <= column else p + 1

    def row(q: int) -> int:
        return q if q <= rx else q + 1

    o = [0] * (G.n + 1)
    x = [0] * (G.n + 1)
    for c in range(G.n):
        o[col(c)] = row(G.o_rows[c])
        if c != column:
            x[col(c)] = row(G.x_rows[c])
    x[column] = rx + 1
    o[column + 1] = rx + 1
    x[column + 1] = rx
    return GridDiagram(n=G.n + 1, o_rows=tuple(o), x_rows=tuple(x), name=G.name)


def destabilize_xsw(G: GridDiagram, column: int) -> GridDiagram:
    """Inverse of :func:`stabilize_xsw`; ``column`` is the column of X1."""
    if not 0 <= column < G.n - 1:
        raise BadLocation(f"destabilization needs columns {column},{column + 1} inside the grid")
    r = G.x_rows[column + 1]
    if r + 1 >= G.n:
        raise IllegalMove(f"X2 in row {r} has no row above it inside the fundamental domain")
    if G.x_rows[column] != r + 1 or G.o_rows[column + 1] != r + 1:
        raise IllegalMove(f"no X1 O1 / . X2 block at column {column}")
    if G.o_rows[column] == r and G.n > 2:
        raise IllegalMove(f"square ({column},{r}) carries an O; destabilizing would stack markings")

    def row(q: int) -> int:
        return q if q <= r else q - 1

    o = []
    x = []
    for c in range(G.n):
        if c == column + 1:
            continue
        o.append(row(G.o_rows[c]))
        x.append(r if c == column else row(G.x_rows[c]))
    return GridDiagram(n=G.n - 1, o_rows=tuple(o), x_rows=tuple(x), name=G.name)


def apply_move(G: GridDiagram, move: str, location: int) -> GridDiagram:
    """Apply a named grid move; row moves go through the transposed diagram."""
    if move == "commutation":
        result = commute_columns(G, location)
    elif move == "switch":
        result = switch_columns(G, location)
    elif move == "row_commutation":
        result = transpose(commute_columns(transpose(G), location))
    elif move == "row_switch":
        result = transpose(switch_columns(transpose(G), location))
    elif move == "stabilize_XSW":
        result = stabilize_xsw(G, location)
    elif move == "destabilize_XSW":
        result = destabilize_xsw(G, location)
    else:
        raise IllegalMove(f"unknown move {move!r}")
    logger.debug("[apply_move] %s at %d: n=%d -> n=%d", move, location, G.n, result.n)
    return result


def legal_moves(G: GridDiagram, max_size: int | None = None) -> list[tuple[str, int]]:
    moves: list[tuple[str, int]] = []
    for i in range(1, G.n):
        relation = column_relation(G, i)
        if relation in ("disjoint", "nested"):
            moves.append(("commutation", i))
        elif relation == "shared_vertex":
            moves.append(("switch", i))
    T = transpose(G)
    for i in range(1, G.n):
        relation = column_relation(T, i)
        if relation in ("disjoint", "nested"):
            moves.append(("row_commutation", i))
        elif relation == "shared_vertex":
            moves.append(("row_switch", i))
    if max_size is None or G.n < max_size:
        moves.extend(("stabilize_XSW", c) for c in range(G.n))
    for c in range(G.n - 1):
        try:
            destabilize_xsw(G, c)
        except (IllegalMove, BadLocation):
            continue
        moves.append(("destabilize_XSW", c))
    return moves


def random_move_sequence(
    G: GridDiagram,
    length: int,
    rng: np.random.Generator,
    max_size: int | None = None,
) -> list[AppliedMove]:
    """Apply ``length`` randomly chosen legal moves, keeping n <= ``max_size``."""
    applied: list[AppliedMove] = []
    current = G
    for _ in range(length):
        candidates = legal_moves(current, max_size)
        if not candidates:
            break
        kind, location = candidates[int(rng.integers(len(candidates)))]
        current = apply_move(current, kind, location)
        applied.append(AppliedMove(kind, location, current))
    return applied
