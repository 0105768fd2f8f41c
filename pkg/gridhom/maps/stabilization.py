"""X:SW stabilization: the quasi-isomorphism from GCL(G') to a mapping cone over GCL(G).

G' carries the block ``X1 O1 / . X2`` where G had one X. The lattice point c
at the centre of the block splits the states of G' into I (through c) and N.
Dropping c identifies I with the states of G; the cone is that of
V1 - V2 on GCL(G)[V1], where V1 belongs to O1 and V2 to the O sharing a row
with X2.
"""

import logging
from fractions import Fraction
from typing import NamedTuple

from gridhom.complex.freecomplex import FreeComplex, FreeMap, MappingCone, Term, grid_complex
from gridhom.complex.polynomial import Ring
from gridhom.grid.diagram import GridDiagram, marking_tables
from gridhom.grid.moves import stabilize_xsw
from gridhom.grid.rectangles import RECTANGLE_KINDS, RectLike, rectangles_from
from gridhom.grid.states import GridState, enumerate_states, grading_pair
from gridhom.maps.domains import check_generators, degree_violations, domain_map, generator_indices
from gridhom.shared.errors import NotARectangle, NotAStabilizationPair
from gridhom.shared.schemas import HomologyTable, VerificationReport, Violation, Window

logger = logging.getLogger(__name__)

SUITE = "stabilization"
HOMOTOPY_DEGREE = (-1, -2)


class Stabilization(NamedTuple):
    G: GridDiagram
    G_prime: GridDiagram
    column: int  # column of the X of G that was stabilized
    row: int  # its row

    @property
    def center(self) -> tuple[int, int]:
        return self.column + 1, self.row + 1

    def column_in_prime(self, c: int) -> int:
        return c if c <= self.column else c + 1

    def row_in_prime(self, q: int) -> int:
        return q if q <= self.row else q + 1

    def embed(self, x: GridState) -> GridState:
        """x ∪ {c} as a state of G'."""
        y = [0] * (self.G.n + 1)
        for c, q in enumerate(x):
            y[self.column_in_prime(c)] = self.row_in_prime(q)
        y[self.column + 1] = self.row + 1
        return tuple(y)

    def contains_center(self, x: GridState) -> bool:
        return x[self.column + 1] == self.row + 1

    def drop_center(self, x: GridState) -> GridState:
        """The bijection e from I(G') to the states of G."""
        return tuple(q if q <= self.row else q - 1 for c, q in enumerate(x) if c != self.column + 1)

    @property
    def o1(self) -> int:
        return self.column + 1

    @property
    def o2(self) -> int:
        """Column of the O in the row of X2."""
        return marking_tables(self.G_prime).o_col[self.row]


def stabilization_of(G: GridDiagram, G_prime: GridDiagram) -> Stabilization:
    """Recover the stabilized column, or raise NotAStabilizationPair."""
    if G_prime.n == G.n + 1:
        for column in range(G.n):
            candidate = stabilize_xsw(G, column)
            if candidate.o_rows == G_prime.o_rows and candidate.x_rows == G_prime.x_rows:
                return Stabilization(G, G_prime, column, G.x_rows[column])
    raise NotAStabilizationPair(f"{G_prime} is not an X:SW stabilization of {G}")


class PulledBackSigns:
    """The sign assignment on G read off a sign assignment of G' through x -> x ∪ {c}."""

    def __init__(self, base, stabilization: Stabilization):
        self.n = base.n - 1
        self.base = base
        self.stabilization = stabilization

    def sign(self, x: GridState, west: int, east: int) -> int:
        st = self.stabilization
        return self.base.sign(st.embed(x), st.column_in_prime(west), st.column_in_prime(east))

    def __call__(self, r: RectLike) -> int:
        if r.kind not in RECTANGLE_KINDS:
            raise NotARectangle(f"cannot sign a {r.kind}")
        return self.sign(r.source, r.west, r.east)


class StabilizationMaps(NamedTuple):
    source: FreeComplex  # GCL(G') over Z
    cone: MappingCone  # of V1 - V2 on GCL(G)[V1]
    H: FreeMap  # homotopy operator through X2 on GCL(G')
    D: FreeMap


def _through_x2(st: Stabilization, S_prime):
    G_prime = st.G_prime
    x2 = st.column + 1

    def domains(x: GridState) -> list[tuple[RectLike, int]]:
        found = []
        for r in rectangles_from(G_prime, x, include_long=True):
            marks = [r.mult(c, G_prime.x_rows[c]) for c in range(G_prime.n)]
            if marks[x2] == 1 and not any(m for c, m in enumerate(marks) if c != x2):
                found.append((r, S_prime(r)))
        return found

    return domains


def stabilization_maps(st: Stabilization, S_prime) -> StabilizationMaps:
    """GCL(G'), the cone, H_X2 and D(x) = (-1)^M(x) (e π x, e π H_X2 x), all over Z."""
    G, G_prime = st.G, st.G_prime
    m = G_prime.n
    S = PulledBackSigns(S_prime, st)
    source = grid_complex(
        G_prime, ring=Ring.INTEGERS, enhanced=True, column_variables=tuple(range(m)), num_u=m, S=S_prime,
        name=str(G_prime),
    )
    base = grid_complex(
        G, ring=Ring.INTEGERS, enhanced=True, column_variables=tuple(st.column_in_prime(c) for c in range(G.n)),
        num_u=m, S=S, name=str(G),
    )
    zero = base.zero_exps()
    v1 = tuple(int(k == st.o1) for k in range(base.num_vars))
    v2 = tuple(int(k == st.o2) for k in range(base.num_vars))
    f = FreeMap(base, base, (-2, -2), [[(i, 1, v1), (i, -1, v2)] for i in range(len(base))], name="V1-V2")
    cone = MappingCone(f)
    H = domain_map(
        G_prime, source, source, _through_x2(st, S_prime), degree=HOMOTOPY_DEGREE, variables=tuple(range(m)),
        name="H_X2",
    )
    index = cone.complex.index
    terms: list[list[Term]] = []
    for k, x in enumerate(source.labels):
        sign = -1 if source.maslov[k] % 2 else 1
        row: list[Term] = []
        if st.contains_center(x):
            row.append((index[("source", st.drop_center(x))], sign, zero))
        for j, coeff, exps in H.terms[k]:
            y = source.labels[j]
            if st.contains_center(y):
                row.append((index[("target", st.drop_center(y))], sign * coeff, exps))
        terms.append(row)
    D = FreeMap(source, cone.complex, (0, 0), terms, name="D")
    return StabilizationMaps(source, cone, H, D)


def _embedding_violations(st: Stabilization) -> list[Violation]:
    """States where x ∪ {c} is not graded (M(x) - 1, A(x) - 1)."""
    bad = []
    for x in enumerate_states(st.G):
        m, a2 = grading_pair(st.G, x)
        got = grading_pair(st.G_prime, st.embed(x))
        if got != (m - 1, a2 - 2):
            bad.append(Violation(suite=SUITE, generator=str(list(x)), detail=f"x ∪ c graded {got}, expected {(m - 1, a2 - 2)}"))
    return bad


def collapsed_cone(G: GridDiagram) -> FreeComplex:
    """Cone of V1 + U on collapsed GCL(G)[V1] over F2."""
    base = grid_complex(G, enhanced=True, num_u=2, name=str(G))
    terms = [[(i, 1, (1, 0, 0)), (i, 1, (0, 1, 0))] for i in range(len(base))]
    f = FreeMap(base, base, (-2, -2), terms, name="V1+U")
    return MappingCone(f).complex


def homology_agreement(
    complexes: list[FreeComplex],
    window: Window | None = None,
    suite: str = SUITE,
) -> tuple[list[Violation], list[HomologyTable]]:
    """Compare reduced homology dimensions of ``complexes`` on the window of the last one."""
    from gridhom.homology.engine import HomologyEngine, default_window

    window = window or default_window(complexes[-1])
    engines = [HomologyEngine(c, window=window) for c in complexes]
    reference = engines[-1]
    cells = reference.window_cells()
    for engine in engines:
        engine.compute(cells)
    bad = []
    for m, a2 in cells:
        dims = [engine.dim(m, a2) for engine in engines]
        if len(set(dims)) > 1:
            named = ", ".join(f"{e.complex.name}: {d}" for e, d in zip(engines, dims))
            bad.append(Violation(suite=suite, generator=f"({m}, {Fraction(a2, 2)})", detail=f"dimensions differ ({named})"))
    return bad, [engine.table(engine.complex.name, actions=False) for engine in engines]


def stabilization_cone_check(
    G: GridDiagram,
    G_prime: GridDiagram,
    S_prime=None,
    *,
    window: Window | None = None,
    exhaustive: bool | None = None,
    samples: int | None = None,
    seed: int | None = None,
    threads: int | None = None,
) -> VerificationReport:
    """Check D against the cone differential over Z, and compare H(GCL(G')), H(Cone), H(GCL(G)) over F2."""
    st = stabilization_of(G, G_prime)
    if S_prime is None:
        from gridhom.signs.assignment import SignAssignment

        S_prime = SignAssignment(G_prime.n)
    maps = stabilization_maps(st, S_prime)
    source, target, D = maps.source, maps.cone.complex, maps.D
    zero = source.zero_exps()

    def check(i: int) -> list[str]:
        gen = {(i, zero): 1}
        residue = dict(target.apply(D.apply(gen)))
        for key, coeff in D.apply(source.apply(gen)).items():
            value = residue.get(key, 0) - coeff
            if value:
                residue[key] = value
            else:
                residue.pop(key, None)
        return [f"∂D - D∂' = {residue}"] if residue else []

    report = VerificationReport(
        suite=SUITE,
        diagrams=[str(G), str(G_prime)],
        metadata={"column": str(st.column), "o1": str(st.o1), "o2": str(st.o2)},
    )
    indices = generator_indices(source, exhaustive, samples, seed)
    for i, detail in check_generators(check, indices, threads):
        report.violations.append(Violation(suite=SUITE, generator=str(list(source.labels[i])), detail=detail))
    for label in degree_violations(D):
        report.violations.append(Violation(suite=SUITE, generator=str(list(label)), detail="D is not homogeneous"))
    report.violations.extend(_embedding_violations(st))
    report.checked = len(indices)

    prime = grid_complex(G_prime, enhanced=True, name=f"GCL({G_prime})")
    cone = collapsed_cone(G)
    cone.name = f"Cone({G})"
    base = grid_complex(G, enhanced=True, name=f"GCL({G})")
    violations, tables = homology_agreement([prime, cone, base], window)
    report.violations.extend(violations)
    report.tables = tables
    for violation in report.violations:
        logger.warning("[stabilization_cone_check] %s at %s: %s", G, violation.generator, violation.detail)
    logger.info("[stabilization_cone_check] %s -> %s: %d violations", G, G_prime, len(report.violations))
    return report
