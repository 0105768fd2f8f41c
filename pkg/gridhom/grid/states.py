"""Grid states and their Maslov and Alexander gradings."""

import itertools
from collections.abc import Iterator
from fractions import Fraction
from typing import NamedTuple

from gridhom.grid.diagram import GridDiagram, component_count
from gridhom.shared.errors import InternalGradingNonIntegral, SizeMismatch

# A grid state is a permutation: its point on column i is (i, state[i]).
GridState = tuple[int, ...]


class Bigrading(NamedTuple):
    maslov: int
    alexander: Fraction


def enumerate_states(G: GridDiagram) -> Iterator[GridState]:
    """Yield all n! grid states in lexicographic order."""
    yield from itertools.permutations(range(G.n))


def _count_below_left(P: list[tuple[int, int]], Q: list[tuple[int, int]]) -> int:
    """Number of pairs (p, q) with p strictly south-west of q."""
    return sum(1 for px, py in P for qx, qy in Q if px < qx and py < qy)


def _doubled_points(state: GridState) -> list[tuple[int, int]]:
    return [(2 * i, 2 * r) for i, r in enumerate(state)]


def _doubled_markings(rows: tuple[int, ...]) -> list[tuple[int, int]]:
    return [(2 * c + 1, 2 * r + 1) for c, r in enumerate(rows)]


def _maslov_against(points: list[tuple[int, int]], markings: list[tuple[int, int]]) -> int:
    return (
        _count_below_left(points, points)
        - _count_below_left(points, markings)
        - _count_below_left(markings, points)
        + _count_below_left(markings, markings)
        + 1
    )


def grading_pair(G: GridDiagram, x: GridState) -> tuple[int, int]:
    """Return (M, 2A) for a state; both integers."""
    if len(x) != G.n:
        raise SizeMismatch(f"state {x} does not fit a grid of size {G.n}")
    points = _doubled_points(x)
    m_o = _maslov_against(points, _doubled_markings(G.o_rows))
    m_x = _maslov_against(points, _doubled_markings(G.x_rows))
    return m_o, m_o - m_x - (G.n - 1)


def grading(G: GridDiagram, x: GridState) -> Bigrading:
    """Maslov and Alexander grading of ``x`` in the fundamental domain [0,n)^2.

    Points sit at integer coordinates and markings at half-integer centres;
    coordinates are doubled so every count is an exact integer comparison.
    """
    maslov, alex2 = grading_pair(G, x)
    alexander = Fraction(alex2, 2)
    if alexander.denominator != 1 and component_count(G) == 1:
        raise InternalGradingNonIntegral(f"Alexander grading {alexander} of {x} on a knot diagram")
    return Bigrading(maslov, alexander)
