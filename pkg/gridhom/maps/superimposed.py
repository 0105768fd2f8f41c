"""Commutation and switch moves on superimposed grids: the pentagon and hexagon maps.

G and G' differ by exchanging columns i-1 and i. Both are drawn on one torus
where G' replaces the vertical circle beta_i by a curve gamma_i meeting it in
two points a and b. The first bigon runs from a up to b, contains both
markings of column i and lies east of beta_i; the second bigon is its
complement and contains both markings of column i-1. For a switch the two
columns share a marking row, and the intersection point at that end of the
first bigon sits inside the shared row, between the two markings there.

Pentagons and hexagons are counted through their associated rectangles in G:
a short or vertical long rectangle with an edge on beta_i. Along the part of
that edge which runs on gamma_i instead, the polygon gains or loses the
bigon markings between the two curves; these corrections are stored as a
patch on the rectangle, so multiplicities and the X-free test read off it.
"""

import logging
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple

from gridhom.complex.freecomplex import FreeComplex, FreeMap, grid_complex
from gridhom.complex.polynomial import Ring
from gridhom.grid.diagram import GridDiagram, transpose
from gridhom.grid.moves import column_relation, commute_columns, switch_columns
from gridhom.grid.rectangles import HEXAGON, LONG_HEXAGON, LONG_PENTAGON, PENTAGON, RectLike, is_x_free, rectangles_from
from gridhom.grid.states import GridState, enumerate_states, grading_pair
from gridhom.maps.domains import (
    SignedDomains,
    add_vectors,
    check_generators,
    degree_violations,
    domain_map,
    generator_indices,
)
from gridhom.shared.errors import BadLocation, BigonConditionViolated, SizeMismatch
from gridhom.shared.schemas import VerificationReport, Violation, Window

logger = logging.getLogger(__name__)

SUITE = "pentagon"
ISOMORPHISM_SUITE = "commutation_isomorphism"

Height = Fraction | int


@dataclass(frozen=True)
class SuperimposedDiagram:
    G: GridDiagram
    G_prime: GridDiagram
    index: int
    start: int  # row of the marking of column i at the southern end of the first bigon
    end: int  # row of the other marking of column i
    shared: int | None = None  # row carrying markings of both columns (switches only)

    @property
    def n(self) -> int:
        return self.G.n

    @property
    def is_switch(self) -> bool:
        return self.shared is not None

    @property
    def a(self) -> Fraction:
        """Height of the southern intersection of beta_i and gamma_i."""
        if self.shared == self.start:
            return Fraction(2 * self.start + 1, 2)
        return Fraction(4 * self.start - 1, 4)

    @property
    def b(self) -> Fraction:
        if self.shared == self.end:
            return Fraction(2 * self.end + 1, 2)
        return Fraction(4 * self.end + 3, 4)

    def in_first(self, height: Height) -> bool:
        """Whether ``height`` lies between a and b, inside the first bigon."""
        return (height - self.a) % self.n < (self.b - self.a) % self.n

    def marking_height(self, column: int, row: int) -> Fraction:
        """Height of a marking of column i-1 or i inside its row."""
        if row != self.shared:
            return Fraction(2 * row + 1, 2)
        # the column-i marking sits on the first-bigon side of the corner in its row
        upper = (column == self.index) == (row == self.start)
        return Fraction(4 * row + (3 if upper else 1), 4)

    def bigon_markings(self) -> list[tuple[int, int, bool, Fraction]]:
        """(column, row, is_o, height) of the four markings inside the bigons."""
        G = self.G
        return [
            (column, row, is_o, self.marking_height(column, row))
            for column in (self.index - 1, self.index)
            for row, is_o in ((G.o_rows[column], True), (G.x_rows[column], False))
        ]

    def variables(self) -> tuple[int, ...]:
        """Variable of each column of G': the O it carries, labelled by its column in G."""
        i = self.index
        perm = list(range(self.n))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return tuple(perm)


def _arc(start: int, end: int, n: int) -> list[int]:
    return [(start + k) % n for k in range((end - start) % n + 1)]


def superimpose(G: GridDiagram, index: int) -> SuperimposedDiagram:
    """Superimpose G and the diagram with its columns index-1 and index exchanged.

    Disjoint or nested marking segments give a commutation; segments sharing
    one row give a switch.
    """
    if not 1 <= index <= G.n - 1:
        raise BadLocation(f"column exchange index {index} outside 1..{G.n - 1}")
    relation = column_relation(G, index)
    if relation in ("disjoint", "nested"):
        G_prime = commute_columns(G, index)
    elif relation == "shared_vertex":
        G_prime = switch_columns(G, index)
    else:
        raise BigonConditionViolated(
            f"columns {index - 1},{index} are {relation}; no commutation or switch exchanges them"
        )
    n = G.n
    right = (G.o_rows[index], G.x_rows[index])
    left = {G.o_rows[index - 1], G.x_rows[index - 1]}
    shared = left & set(right)
    for start, end in (right, right[::-1]):
        if not (left - shared) & set(_arc(start, end, n)):
            break
    else:
        raise BigonConditionViolated(f"no bigon around the markings of column {index} avoids column {index - 1}")
    sigma = SuperimposedDiagram(G, G_prime, index, start, end, shared.pop() if shared else None)
    if not sigma.in_first(sigma.marking_height(index, G.x_rows[index])) or sigma.in_first(
        sigma.marking_height(index - 1, G.x_rows[index - 1])
    ):
        raise BigonConditionViolated(f"a bigon at index {index} carries no X-marking")
    logger.debug("[superimpose] %s at %d: first bigon rows %d..%d (%s)", G, index, start, end, relation)
    return sigma


def closest_point(sigma: SuperimposedDiagram, x: GridState) -> GridState:
    """The state of G' nearest to ``x``: its point on beta_i moves to gamma_i.

    Points are recorded by their horizontal circle, so the tuple is unchanged.
    """
    if len(x) != sigma.n:
        raise SizeMismatch(f"state {x} does not fit a grid of size {sigma.n}")
    return tuple(x)


def _lifts(point: Fraction, low: Height, high: Height, n: int) -> list[Fraction]:
    """Heights congruent to ``point`` mod n strictly between ``low`` and ``high``."""
    first = low + (point - low) % n
    if first == low:
        first += n
    found = []
    while first < high:
        found.append(first)
        first += n
    return found


def triangle_o_count(sigma: SuperimposedDiagram, x: GridState) -> int:
    """O-markings in the thin triangle between x and its closest point.

    The triangle runs along the bigon holding x's point on beta_i, from that
    point to a.
    """
    n, j, a = sigma.n, x[sigma.index], sigma.a
    if sigma.in_first(j):
        low, high = j - (j - a) % n, j
    else:
        low, high = j, j + (a - j) % n
    return sum(
        len(_lifts(height, low, high, n)) for _, _, is_o, height in sigma.bigon_markings() if is_o
    )


def triangle_violations(sigma: SuperimposedDiagram) -> list[Violation]:
    """States where M(x) - M'(I(x)) differs from -1 + 2|t ∩ O|."""
    bad = []
    for x in enumerate_states(sigma.G):
        lhs = grading_pair(sigma.G, x)[0] - grading_pair(sigma.G_prime, closest_point(sigma, x))[0]
        rhs = -1 + 2 * triangle_o_count(sigma, x)
        if lhs != rhs:
            bad.append(Violation(suite=SUITE, generator=str(list(x)), detail=f"Maslov drop {lhs}, triangle gives {rhs}"))
    return bad


# -- polygons -----------------------------------------------------------------


def _candidates(G: GridDiagram, x: GridState, index: int) -> list[RectLike]:
    return [
        r
        for r in rectangles_from(G, x, include_long=True, horizontal_long=False)
        if r.east == index or r.west == index
    ]


def _span(r: RectLike) -> tuple[int, int]:
    """Lifted heights of the bottom and top of ``r``."""
    return r.south, r.south + r.height


def _gamma_patch(
    sigma: SuperimposedDiagram, low: Height, high: Height, west_region: bool
) -> tuple[tuple[int, int, int], ...]:
    """Corrections for an edge running on gamma_i between two heights.

    Column i markings lie east of beta_i and column i-1 markings west of it;
    a region west of gamma_i gains the former and loses the latter.
    """
    counts: Counter[tuple[int, int]] = Counter()
    for column, row, _, height in sigma.bigon_markings():
        k = len(_lifts(height, low, high, sigma.n))
        if k:
            counts[column, row] += k if (column == sigma.index) == west_region else -k
    return tuple(sorted((c, r, d) for (c, r), d in counts.items() if d))


def _polygon(r: RectLike, kind: str, patch: tuple[tuple[int, int, int], ...]) -> RectLike:
    long_kind = {PENTAGON: LONG_PENTAGON, HEXAGON: LONG_HEXAGON}[kind]
    return replace(r, kind=long_kind if r.is_long else kind, patch=patch, degree=r.t_degree())


def pentagons(sigma: SuperimposedDiagram, x: GridState, S) -> SignedDomains:
    """Empty pentagons from x in G to states of G', signed (-1)^(M(x)+B) S(R).

    The fifth corner is at a. West of beta_i the east edge climbs gamma_i up
    to a and then beta_i; east of it the west edge climbs beta_i up to a and
    then gamma_i.
    """
    G, i, n = sigma.G, sigma.index, sigma.n
    maslov = grading_pair(G, x)[0]
    found = []
    for r in _candidates(G, x, i):
        lo, hi = _span(r)
        west_side = int(r.east == i)
        for corner in _lifts(sigma.a, lo, hi, n):
            patch = _gamma_patch(sigma, lo, corner, True) if west_side else _gamma_patch(sigma, corner, hi, False)
            p = _polygon(r, PENTAGON, patch)
            if is_x_free(G, p):
                found.append((p, (-1) ** (maslov + west_side) * S(r)))
    return found


def reverse_pentagons(sigma: SuperimposedDiagram, x: GridState, S) -> SignedDomains:
    """Empty pentagons from x in G' to states of G, signed (-1)^(M(y)+B) S(R).

    The fifth corner is at b, with beta_i below it and gamma_i above it on
    either side.
    """
    G, i, n = sigma.G, sigma.index, sigma.n
    found = []
    for r in _candidates(G, x, i):
        lo, hi = _span(r)
        west_side = int(r.east == i)
        for corner in _lifts(sigma.b, lo, hi, n):
            patch = _gamma_patch(sigma, corner, hi, True) if west_side else _gamma_patch(sigma, lo, corner, False)
            p = _polygon(r, PENTAGON, patch)
            if is_x_free(G, p):
                maslov = grading_pair(G, p.target)[0]
                found.append((p, (-1) ** (maslov + west_side) * S(r)))
    return found


def hexagons(sigma: SuperimposedDiagram, x: GridState, S) -> SignedDomains:
    """Empty hexagons from x to states of G with corners at a and b, signed S(R).

    West of beta_i the gamma_i stretch of the edge runs from b up to a, east
    of it from a up to b.
    """
    G, i, n = sigma.G, sigma.index, sigma.n
    found = []
    for r in _candidates(G, x, i):
        lo, hi = _span(r)
        west_side = r.east == i
        lower, upper = (sigma.b, sigma.a) if west_side else (sigma.a, sigma.b)
        for first in _lifts(lower, lo, hi, n):
            for second in _lifts(upper, first, hi, n):
                p = _polygon(r, HEXAGON, _gamma_patch(sigma, first, second, west_side))
                if is_x_free(G, p):
                    found.append((p, S(r)))
    return found


# -- maps and checks ------------------------------------------------------------


class PentagonSuite(NamedTuple):
    P: FreeMap  # GCL(G) -> GCL(G')
    P_prime: FreeMap  # GCL(G') -> GCL(G)
    H: FreeMap  # GCL(G) -> GCL(G), raises Maslov by one
    report: VerificationReport


def _default_signs(n: int, S):
    if S is not None:
        return S
    from gridhom.signs.assignment import SignAssignment

    return SignAssignment(n)


def pentagon_maps(
    sigma: SuperimposedDiagram,
    source: FreeComplex,
    target: FreeComplex,
    S,
    variables: tuple[int, ...] | None = None,
) -> tuple[FreeMap, FreeMap, FreeMap]:
    """P, P' and H between complexes built on G and G'."""
    G = sigma.G
    P = domain_map(G, source, target, lambda x: pentagons(sigma, x, S), variables=variables, name="P")
    P_prime = domain_map(G, target, source, lambda x: reverse_pentagons(sigma, x, S), variables=variables, name="P'")
    H = domain_map(G, source, source, lambda x: hexagons(sigma, x, S), degree=(1, 0), variables=variables, name="H")
    return P, P_prime, H


def pentagon_suite(
    sigma: SuperimposedDiagram,
    S=None,
    *,
    exhaustive: bool | None = None,
    samples: int | None = None,
    seed: int | None = None,
    threads: int | None = None,
) -> PentagonSuite:
    """Build P, P' and H over Z[V_1..V_n, v] and check them on generators.

    Checked: ∂'P = P∂, ∂P' = P'∂', H∂ + ∂H + P'P = -Id, homogeneity of all
    three maps and the Maslov shift of the closest-point map.
    """
    G, G_prime, n = sigma.G, sigma.G_prime, sigma.n
    S = _default_signs(n, S)
    identity = tuple(range(n))
    source = grid_complex(G, ring=Ring.INTEGERS, enhanced=True, column_variables=identity, num_u=n, S=S, name=str(G))
    target = grid_complex(
        G_prime, ring=Ring.INTEGERS, enhanced=True, column_variables=sigma.variables(), num_u=n, S=S,
        name=f"{G}'",
    )
    P, P_prime, H = pentagon_maps(sigma, source, target, S, variables=identity)
    zero = source.zero_exps()
    ring = Ring.INTEGERS

    def check_source(i: int) -> list[str]:
        gen = {(i, zero): 1}
        failures = []
        d_gen = source.apply(gen)
        chain = add_vectors(ring, target.apply(P.apply(gen)), P.apply(d_gen), signs=(1, -1))
        if chain:
            failures.append(f"∂'P - P∂ = {chain}")
        homotopy = add_vectors(ring, H.apply(d_gen), source.apply(H.apply(gen)), P_prime.apply(P.apply(gen)), gen)
        if homotopy:
            failures.append(f"H∂ + ∂H + P'P + Id = {homotopy}")
        return failures

    def check_target(i: int) -> list[str]:
        gen = {(i, zero): 1}
        chain = add_vectors(ring, source.apply(P_prime.apply(gen)), P_prime.apply(target.apply(gen)), signs=(1, -1))
        return [f"∂P' - P'∂' = {chain}"] if chain else []

    report = VerificationReport(
        suite=SUITE,
        diagrams=[str(G), f"{G}'"],
        metadata={
            "index": str(sigma.index),
            "relation": column_relation(G, sigma.index),
            "bigon_rows": f"{sigma.start}..{sigma.end}",
        },
    )
    indices = generator_indices(source, exhaustive, samples, seed)
    for i, detail in check_generators(check_source, indices, threads):
        report.violations.append(Violation(suite=SUITE, generator=str(list(source.labels[i])), detail=detail))
    for i, detail in check_generators(check_target, indices, threads):
        report.violations.append(Violation(suite=SUITE, generator=str(list(target.labels[i])), detail=f"on G': {detail}"))
    for f in (P, P_prime, H):
        for label in degree_violations(f):
            report.violations.append(Violation(suite=SUITE, generator=str(list(label)), detail=f"{f.name} is not homogeneous"))
    report.violations.extend(triangle_violations(sigma))
    report.checked = 2 * len(indices)
    for violation in report.violations:
        logger.warning("[pentagon_suite] %s at %s: %s", G, violation.generator, violation.detail)
    logger.info("[pentagon_suite] %s at %d: %d checks, %d violations", G, sigma.index, report.checked, len(report.violations))
    return PentagonSuite(P, P_prime, H, report)


def isomorphism_violations(
    f: FreeMap,
    window: Window | None = None,
    suite: str = ISOMORPHISM_SUITE,
) -> tuple[list[Violation], list]:
    """Cells of the window where ``f`` does not induce an isomorphism on F2 homology.

    Returns the violations and the homology tables of source and target.
    """
    from gridhom.homology.engine import HomologyEngine, default_window

    window = window or default_window(f.source)
    src = HomologyEngine(f.source, window=window)
    tgt = HomologyEngine(f.target, window=window)
    src.compute()
    tgt.compute()
    bad = []
    for cell in sorted({src.canonical(*c) for c in src.window_cells()}):
        rank = src.induced_rank(f, cell, cell, tgt)
        dims = (src.cell(*cell).dim, tgt.cell(*cell).dim)
        if not rank == dims[0] == dims[1]:
            detail = f"{f.name} has rank {rank} between dimensions {dims[0]} and {dims[1]}"
            bad.append(Violation(suite=suite, generator=f"({cell[0]}, {Fraction(cell[1], 2)})", detail=detail))
    tables = [src.table(f.source.name, actions=False), tgt.table(f.target.name, actions=False)]
    return bad, tables


def commutation_check(
    G: GridDiagram,
    index: int,
    S=None,
    *,
    rows: bool = False,
    window: Window | None = None,
    exhaustive: bool | None = None,
    samples: int | None = None,
    seed: int | None = None,
    threads: int | None = None,
) -> VerificationReport:
    """Pentagon suite plus the check that P induces isomorphisms on collapsed GHL.

    Row commutations run on the transposed diagram.
    """
    if rows:
        G = transpose(G)
    sigma = superimpose(G, index)
    S = _default_signs(G.n, S)
    suite = pentagon_suite(sigma, S, exhaustive=exhaustive, samples=samples, seed=seed, threads=threads)
    report = suite.report
    source = grid_complex(G, enhanced=True, name=str(G))
    target = grid_complex(sigma.G_prime, enhanced=True, name=f"{G}'")
    P = domain_map(G, source, target, lambda x: pentagons(sigma, x, S), name="P")
    violations, tables = isomorphism_violations(P, window)
    report.violations.extend(violations)
    report.tables = tables
    report.metadata["rows"] = str(rows).lower()
    logger.info("[commutation_check] %s at %d: %d violations", G, index, len(report.violations))
    return report
