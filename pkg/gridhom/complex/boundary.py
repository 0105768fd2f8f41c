"""Differentials, homotopy operators and the v-graded pieces of the enhanced differential."""

import logging
from collections.abc import Callable, Sequence

from gridhom.complex.polynomial import ChainElement, Ring
from gridhom.complex.variants import GC_MINUS, ComplexVariant
from gridhom.grid.diagram import GridDiagram, marking_tables
from gridhom.grid.rectangles import Multiplicities, RectLike, multiplicities, rectangles_from
from gridhom.shared.errors import BadMarkingIndex, VariantMismatch

logger = logging.getLogger(__name__)

Selector = Callable[[RectLike, Multiplicities], bool]


def rectangle_operator(
    G: GridDiagram,
    xi: ChainElement,
    select: Selector,
    *,
    variable_map: Sequence[int | None],
    S=None,
    include_long: bool = False,
    enhanced: bool = True,
    v_power: int | None = None,
) -> ChainElement:
    """Sum over selected rectangles of sign * v^T * prod V^O applied to ``xi``.

    With ``enhanced`` False only rectangles with T = 0 count. With ``v_power``
    set, only rectangles with exactly that T count and v is not recorded.
    """
    result = ChainElement(xi.ring)
    for x, mono, coeff in xi:
        for r in rectangles_from(G, x, include_long=include_long):
            marks = multiplicities(G, r)
            if not select(r, marks):
                continue
            if v_power is not None:
                if marks.t != v_power:
                    continue
                dv = 0
            elif enhanced:
                dv = marks.t
            elif marks.t:
                continue
            else:
                dv = 0
            exps = []
            killed = False
            for column, e in enumerate(marks.o):
                if not e:
                    continue
                index = variable_map[column]
                if index is None:
                    killed = True
                    break
                exps.append((index, e))
            if killed:
                continue
            sign = S(r) if S is not None else 1
            result.add_term(r.target, mono.times(exps, dv), coeff * sign)
    return result


def _x_free(r: RectLike, marks: Multiplicities) -> bool:
    return not any(marks.x)


def _variable_map(G: GridDiagram, variant: ComplexVariant, var_perm: Sequence[int] | None):
    base = variant.variable_map(G)
    if var_perm is None:
        return base
    return tuple(None if index is None else var_perm[index] for index in base)


def boundary(
    G: GridDiagram,
    variant: ComplexVariant,
    xi: ChainElement,
    S=None,
    var_perm: Sequence[int] | None = None,
) -> ChainElement:
    """The differential of ``variant`` applied to ``xi``.

    Counts X-free short rectangles. ``var_perm`` relabels the variable indices,
    which lets complexes of related diagrams share one set of variables.
    """
    variant.check(S, xi.ring)
    return rectangle_operator(
        G,
        xi,
        _x_free,
        variable_map=_variable_map(G, variant, var_perm),
        S=S,
        enhanced=variant.enhanced,
    )


def x_marking_of(G: GridDiagram, i: int) -> int:
    """Column of X_i, the X sharing a row with O_i."""
    if not 0 <= i < G.n:
        raise BadMarkingIndex(f"no O-marking {i} in a grid of size {G.n}")
    return marking_tables(G).x_col[G.o_rows[i]]


def homotopy_H(
    G: GridDiagram,
    variant: ComplexVariant,
    S,
    i: int,
    xi: ChainElement,
    var_perm: Sequence[int] | None = None,
) -> ChainElement:
    """Homotopy operator through X_i: counts rectangles and long rectangles
    meeting X_i exactly once and no other X. Bidegree (-1, -1).
    """
    variant.check(S, xi.ring)
    column = x_marking_of(G, i)

    def through_x_i(r: RectLike, marks: Multiplicities) -> bool:
        return marks.x[column] == 1 and not any(m for c, m in enumerate(marks.x) if c != column)

    return rectangle_operator(
        G,
        xi,
        through_x_i,
        variable_map=_variable_map(G, variant, var_perm),
        S=S,
        include_long=True,
        enhanced=variant.enhanced,
    )


def partial_k(G: GridDiagram, k: int, xi: ChainElement, S=None) -> ChainElement:
    """The v^k coefficient of the enhanced differential, as an operator on GC-.

    Counts X-free short rectangles with exactly k interior points.
    """
    if xi.ring is Ring.INTEGERS and S is None:
        raise VariantMismatch("integral coefficients need a sign assignment")
    return rectangle_operator(
        G,
        xi,
        _x_free,
        variable_map=GC_MINUS.variable_map(G),
        S=S,
        v_power=k,
    )


def d1_operator(G: GridDiagram, xi: ChainElement) -> ChainElement:
    """∂1 on GC- over F2; bidegree (-3, 0)."""
    if xi.ring is not Ring.MOD2:
        raise VariantMismatch("d1_operator works over F2")
    return partial_k(G, 1, xi)
