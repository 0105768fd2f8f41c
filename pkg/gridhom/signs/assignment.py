"""Sign assignments on rectangles and long rectangles."""

import logging
import threading
from collections.abc import Callable

import numpy as np

from gridhom.grid.rectangles import RECTANGLE_KINDS, RectLike
from gridhom.grid.states import GridState
from gridhom.signs.spin import inversions, spin_section
from gridhom.shared.errors import MissingSign, NotARectangle, SizeMismatch

logger = logging.getLogger(__name__)


class SignAssignment:
    """Signs from the spin section: S(r) = tau(r)^-1 gamma(sigma_x)^-1 gamma(sigma_y).

    A rectangle is identified by its source state and its west and east
    columns; the target swaps those two entries. A long rectangle has the
    sign of the short rectangle with the same corners.
    """

    def __init__(self, n: int):
        self.n = n
        self.section = spin_section(n)
        self._cache: dict[tuple[GridState, int, int], int] = {}
        self._lock = threading.Lock()

    def sign(self, x: GridState, west: int, east: int) -> int:
        key = (x, west, east)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        y = list(x)
        y[west], y[east] = y[east], y[west]
        algebra = self.section.algebra
        left = algebra.mul_difference(west, east, algebra.reverse(self.section.gamma(x)))
        pairing = algebra.scalar_product(left, self.section.gamma(tuple(y)))
        if pairing == 0:
            raise NotARectangle(f"degenerate sign pairing for {x} between columns {west},{east}")
        value = -1 if pairing > 0 else 1
        if inversions(x) % 2:
            value = -value
        with self._lock:
            self._cache[key] = value
        return value

    def __call__(self, r: RectLike) -> int:
        if r.kind not in RECTANGLE_KINDS:
            raise NotARectangle(f"cannot sign a {r.kind}")
        if len(r.source) != self.n:
            raise SizeMismatch(f"rectangle on a grid of size {len(r.source)}, assignment for {self.n}")
        return self.sign(r.source, r.west, r.east)


class GaugedSignAssignment:
    """S2(r) = g(x) S1(r) g(y) for a +-1 valued gauge g on states."""

    def __init__(self, base: "SignAssignment | GaugedSignAssignment", gauge: Callable[[GridState], int]):
        self.n = base.n
        self.base = base
        self.gauge = gauge

    def sign(self, x: GridState, west: int, east: int) -> int:
        y = list(x)
        y[west], y[east] = y[east], y[west]
        return self.gauge(x) * self.base.sign(x, west, east) * self.gauge(tuple(y))

    def __call__(self, r: RectLike) -> int:
        if r.kind not in RECTANGLE_KINDS:
            raise NotARectangle(f"cannot sign a {r.kind}")
        return self.sign(r.source, r.west, r.east)


def random_gauge(seed: int) -> Callable[[GridState], int]:
    """A deterministic pseudo-random gauge: each state gets its own seeded draw."""

    def gauge(x: GridState) -> int:
        rng = np.random.default_rng([seed, *x])
        return 1 if rng.integers(2) == 0 else -1

    return gauge


class TableSignAssignment:
    """Signs read from an explicit table keyed by (source, west, east).

    A key missing from the table takes ``default``; with no default it raises.
    """

    def __init__(
        self,
        n: int,
        table: dict[tuple[GridState, int, int], int],
        default: int | None = None,
    ):
        self.n = n
        self.table = table
        self.default = default

    def sign(self, x: GridState, west: int, east: int) -> int:
        key = (tuple(x), west, east)
        if key in self.table:
            return self.table[key]
        if self.default is None:
            raise MissingSign(f"no sign for the rectangle from {key[0]} on columns {west},{east}")
        return self.default

    def __call__(self, r: RectLike) -> int:
        if r.kind not in RECTANGLE_KINDS:
            raise NotARectangle(f"cannot sign a {r.kind}")
        return self.sign(r.source, r.west, r.east)


def sign_of(r: RectLike, x: GridState, y: GridState, S) -> int:
    """Sign of ``r`` as an element of Rect*(x, y)."""
    if r.kind not in RECTANGLE_KINDS:
        raise NotARectangle(f"cannot sign a {r.kind}")
    if r.source != tuple(x) or r.target != tuple(y):
        raise NotARectangle(f"rectangle goes {r.source} -> {r.target}, not {tuple(x)} -> {tuple(y)}")
    return S(r)


def solve_sign_assignment(n: int) -> TableSignAssignment:
    """Find a sign assignment by solving the axioms as linear equations over GF(2).

    Only practical for n <= 3. A bit value 1 stands for the sign -1.
    """
    from gridhom.grid.diagram import GridDiagram
    from gridhom.homology.linalg import gf2_solve
    from gridhom.signs.verify import composite_constraints

    if n > 3:
        raise SizeMismatch(f"constraint solving is limited to n <= 3, got {n}")
    G = GridDiagram(n=n, o_rows=tuple(range(n)), x_rows=tuple((r + 1) % n for r in range(n)))
    keys: dict[tuple[GridState, int, int], int] = {}

    def variable(r: RectLike) -> int:
        key = (r.source, r.west, r.east)
        if key not in keys:
            keys[key] = len(keys)
        return keys[key]

    equations = [([variable(r) for r in rects], parity) for rects, parity in composite_constraints(G)]
    A = np.zeros((len(equations), len(keys)), dtype=np.uint8)
    b = np.zeros(len(equations), dtype=np.uint8)
    for row, (variables, parity) in enumerate(equations):
        for index in variables:
            A[row, index] ^= 1
        b[row] = parity
    solution = gf2_solve(A, b)
    if solution is None:
        raise NotARectangle(f"sign axioms have no solution for n={n}")
    table = {key: -1 if solution[index] else 1 for key, index in keys.items()}
    logger.info("[solve_sign_assignment] n=%d: %d unknowns, %d equations", n, len(keys), len(equations))
    return TableSignAssignment(n, table)
