"""Finitely generated free bigraded complexes over F[U_1..U_k, v] or Z[U_1..U_k, v].

The homology engine and the mapping cones of the invariance and skein checks
all work on this one representation: generators with (Maslov, 2*Alexander)
gradings, and a differential listing (target, coefficient, exponents) per
generator. Exponent tuples list the U-like variables first and v last.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property

from gridhom.complex.polynomial import Ring
from gridhom.complex.variants import ComplexVariant
from gridhom.grid.diagram import GridDiagram, component_count
from gridhom.grid.rectangles import multiplicities, rectangles_from
from gridhom.grid.states import enumerate_states, grading_pair
from gridhom.shared.errors import SizeMismatch, VariantMismatch

logger = logging.getLogger(__name__)

Exps = tuple[int, ...]
Term = tuple[int, int, Exps]
# sparse vector: (generator index, exponents) -> coefficient
Vector = dict[tuple[int, Exps], int]

U_DEGREE = (-2, -2)
V_DEGREE = (2, 0)


def _add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(p + q for p, q in zip(a, b))


def _normalize(ring: Ring, coeff: int) -> int:
    return coeff % 2 if ring is Ring.MOD2 else coeff


@dataclass(eq=False)
class FreeComplex:
    ring: Ring
    labels: list[Hashable]
    maslov: list[int]
    alex2: list[int]
    num_u: int
    has_v: bool
    terms: list[list[Term]]
    name: str = ""
    # H(this) = H(reduced) ⊗ W^w_power with W = F(0,0) ⊕ F(-1,-1)
    w_power: int = 0
    grid_size: int = 0

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def num_vars(self) -> int:
        return self.num_u + int(self.has_v)

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def var_degree(self, k: int) -> tuple[int, int]:
        return V_DEGREE if self.has_v and k == self.num_u else U_DEGREE

    def degree_of(self, i: int, exps: Exps) -> tuple[int, int]:
        m, a2 = self.maslov[i], self.alex2[i]
        for k, e in enumerate(exps):
            dm, da2 = self.var_degree(k)
            m += e * dm
            a2 += e * da2
        return m, a2

    def zero_exps(self) -> Exps:
        return (0,) * self.num_vars

    def apply(self, vector: Vector, v_power: int | None = None) -> Vector:
        """∂ on a sparse vector; ``v_power`` keeps only terms with that v exponent."""
        result: Vector = {}
        for (i, exps), coeff in vector.items():
            for j, c, texps in self.terms[i]:
                if v_power is not None and (not self.has_v or texps[-1] != v_power):
                    continue
                key = (j, _add_exps(exps, texps))
                value = _normalize(self.ring, result.get(key, 0) + coeff * c)
                if value:
                    result[key] = value
                else:
                    result.pop(key, None)
        return result

    def degree_violations(self) -> list[tuple[Hashable, Hashable]]:
        """Differential terms whose bidegree is not (-1, 0)."""
        bad = []
        for i, terms in enumerate(self.terms):
            m, a2 = self.maslov[i], self.alex2[i]
            for j, _, exps in terms:
                if self.degree_of(j, exps) != (m - 1, a2):
                    bad.append((self.labels[i], self.labels[j]))
        return bad

    def d_squared_violations(self) -> list[Hashable]:
        return [self.labels[i] for i in range(len(self)) if self.apply(self.apply({(i, self.zero_exps()): 1}))]

    def piece(self, v_power: int) -> FreeComplex:
        """Same generators, keeping only differential terms with v exponent ``v_power``; v is dropped."""
        if not self.has_v:
            raise VariantMismatch(f"{self.name} has no v variable")
        terms = [[(j, c, exps[:-1]) for j, c, exps in row if exps[-1] == v_power] for row in self.terms]
        return replace(self, has_v=False, terms=terms, name=f"{self.name}[v^{v_power}]")

    def with_u_variables(self, num_u: int) -> FreeComplex:
        """Append U-like variables that the differential does not use."""
        if num_u < self.num_u:
            raise SizeMismatch(f"cannot drop variables from {self.name}")
        pad = (0,) * (num_u - self.num_u)

        def widen(exps: Exps) -> Exps:
            if self.has_v:
                return exps[:-1] + pad + exps[-1:]
            return exps + pad

        terms = [[(j, c, widen(exps)) for j, c, exps in row] for row in self.terms]
        return replace(self, num_u=num_u, terms=terms)

    def reduce_mod2(self) -> FreeComplex:
        terms = [[(j, 1, exps) for j, c, exps in row if c % 2] for row in self.terms]
        return replace(self, ring=Ring.MOD2, terms=terms)

    def summary(self) -> dict[str, int]:
        return {
            "generators": len(self),
            "terms": sum(len(row) for row in self.terms),
            "num_u": self.num_u,
            "has_v": int(self.has_v),
            "w_power": self.w_power,
        }


@dataclass(eq=False)
class FreeMap:
    """A module map between free complexes, given on generators."""

    source: FreeComplex
    target: FreeComplex
    degree: tuple[int, int]
    terms: list[list[Term]]
    name: str = ""

    def apply(self, vector: Vector) -> Vector:
        result: Vector = {}
        ring = self.target.ring
        for (i, exps), coeff in vector.items():
            for j, c, texps in self.terms[i]:
                key = (j, _add_exps(exps, texps))
                value = _normalize(ring, result.get(key, 0) + coeff * c)
                if value:
                    result[key] = value
                else:
                    result.pop(key, None)
        return result

    def chain_violations(self, sign: int = 1) -> list[Hashable]:
        """Source generators where ∂f - sign * f∂ does not vanish."""
        bad = []
        zero = self.source.zero_exps()
        for i in range(len(self.source)):
            gen = {(i, zero): 1}
            lhs = self.target.apply(self.apply(gen))
            rhs = self.apply(self.source.apply(gen))
            residue = dict(lhs)
            for key, coeff in rhs.items():
                value = _normalize(self.target.ring, residue.get(key, 0) - sign * coeff)
                if value:
                    residue[key] = value
                else:
                    residue.pop(key, None)
            if residue:
                bad.append(self.source.labels[i])
        return bad


@dataclass(eq=False)
class MappingCone:
    """Cone(f) with generators (\"source\", g) shifted by deg f + (1, 0), then (\"target\", g)."""

    f: FreeMap
    complex: FreeComplex = field(init=False)
    offset: int = field(init=False)

    def __post_init__(self) -> None:
        src, tgt = self.f.source, self.f.target
        if (src.num_u, src.has_v) != (tgt.num_u, tgt.has_v) or src.ring != tgt.ring:
            raise SizeMismatch(f"cone of {self.f.name}: source and target rings differ")
        dm, da2 = self.f.degree
        self.offset = len(src)
        labels = [("source", label) for label in src.labels] + [("target", label) for label in tgt.labels]
        maslov = [m + dm + 1 for m in src.maslov] + list(tgt.maslov)
        alex2 = [a + da2 for a in src.alex2] + list(tgt.alex2)
        terms: list[list[Term]] = []
        for i in range(len(src)):
            row = [(j, _normalize(src.ring, -c), exps) for j, c, exps in src.terms[i]]
            row += [(self.offset + j, c, exps) for j, c, exps in self.f.terms[i]]
            terms.append(row)
        for i in range(len(tgt)):
            terms.append([(self.offset + j, c, exps) for j, c, exps in tgt.terms[i]])
        self.complex = FreeComplex(
            src.ring, labels, maslov, alex2, src.num_u, src.has_v, terms,
            name=f"Cone({self.f.name})", w_power=tgt.w_power, grid_size=tgt.grid_size,
        )

    def inclusion(self) -> FreeMap:
        tgt = self.f.target
        zero = tgt.zero_exps()
        terms = [[(self.offset + i, 1, zero)] for i in range(len(tgt))]
        return FreeMap(tgt, self.complex, (0, 0), terms, name=f"incl({self.f.name})")

    def projection(self) -> FreeMap:
        """Cone -> source; anticommutes with the differentials."""
        src = self.f.source
        zero = src.zero_exps()
        dm, da2 = self.f.degree
        terms = [[(i, 1, zero)] for i in range(len(src))] + [[] for _ in range(len(self.f.target))]
        return FreeMap(self.complex, src, (-dm - 1, -da2), terms, name=f"proj({self.f.name})")


def grid_complex(
    G: GridDiagram,
    *,
    ring: Ring = Ring.MOD2,
    enhanced: bool = False,
    column_variables: Sequence[int | None] | None = None,
    num_u: int = 1,
    S=None,
    w_power: int | None = None,
    name: str | None = None,
) -> FreeComplex:
    """The grid complex with each O column sent to a U-like variable (or to 0 for None).

    The default sends every column to a single U: the fully collapsed complex,
    whose homology is the collapsed homology tensored with W^(n - components).
    """
    if column_variables is None:
        column_variables = (0,) * G.n if num_u else (None,) * G.n
    if len(column_variables) != G.n:
        raise SizeMismatch(f"{len(column_variables)} column variables for a grid of size {G.n}")
    if ring is Ring.INTEGERS and S is None:
        raise VariantMismatch("an integral grid complex needs a sign assignment")
    states = list(enumerate_states(G))
    index = {x: i for i, x in enumerate(states)}
    maslov, alex2 = [], []
    for x in states:
        m, a2 = grading_pair(G, x)
        maslov.append(m)
        alex2.append(a2)
    nv = num_u + int(enhanced)
    terms: list[list[Term]] = []
    for x in states:
        row: list[Term] = []
        for r in rectangles_from(G, x):
            marks = multiplicities(G, r)
            if any(marks.x) or (marks.t and not enhanced):
                continue
            exps = [0] * nv
            killed = False
            for column, e in enumerate(marks.o):
                if not e:
                    continue
                k = column_variables[column]
                if k is None:
                    killed = True
                    break
                exps[k] += e
            if killed:
                continue
            if enhanced:
                exps[-1] = marks.t
            coeff = S(r) if ring is Ring.INTEGERS else 1
            row.append((index[r.target], coeff, tuple(exps)))
        terms.append(row)
    if w_power is None:
        w_power = G.n - component_count(G)
    complex_ = FreeComplex(
        ring, states, maslov, alex2, num_u, enhanced, terms,
        name=name or str(G), w_power=w_power, grid_size=G.n,
    )
    logger.info("[grid_complex] %s: %s", complex_.name, complex_.summary())
    return complex_


def variant_complex(G: GridDiagram, variant: ComplexVariant, S=None) -> FreeComplex:
    """Fully collapsed complex for ``variant``; GC_hat uses the complex with every V set to 0."""
    variant.check(S)
    if variant.hat:
        return grid_complex(G, num_u=0, name=f"{G}:{variant.label}")
    return grid_complex(
        G,
        ring=variant.ring,
        enhanced=variant.enhanced,
        S=S if variant.signed else None,
        name=f"{G}:{variant.label}",
    )


def compose_maps(first: FreeMap, second: FreeMap) -> FreeMap:
    """second ∘ first."""
    if first.target is not second.source:
        raise SizeMismatch(f"cannot compose {first.name} with {second.name}")
    zero = first.source.zero_exps()
    terms = []
    for i in range(len(first.source)):
        image = second.apply(first.apply({(i, zero): 1}))
        terms.append([(j, c, exps) for (j, exps), c in sorted(image.items())])
    degree = (first.degree[0] + second.degree[0], first.degree[1] + second.degree[1])
    return FreeMap(first.source, second.target, degree, terms, name=f"{second.name}∘{first.name}")
