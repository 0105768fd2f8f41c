"""Chain maps counted by domains, and generator-by-generator identity checks."""

import logging
from collections.abc import Callable, Hashable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from gridhom.complex.freecomplex import FreeComplex, FreeMap, Term, Vector
from gridhom.complex.polynomial import Ring
from gridhom.grid.diagram import GridDiagram
from gridhom.grid.rectangles import RectLike
from gridhom.shared import config

logger = logging.getLogger(__name__)

# (domain, sign) pairs leaving one generator
SignedDomains = list[tuple[RectLike, int]]


def domain_exps(
    G: GridDiagram,
    p: RectLike,
    complex_: FreeComplex,
    variables: Sequence[int | None],
) -> tuple[int, ...] | None:
    """Exponents of V^O(p) v^T(p) in ``complex_``; None when a killed variable is hit."""
    exps = [0] * complex_.num_vars
    for c in range(G.n):
        e = p.mult(c, G.o_rows[c])
        if not e:
            continue
        k = variables[c]
        if k is None:
            return None
        exps[k] += e
    if complex_.has_v:
        exps[-1] = p.t_degree()
    elif p.t_degree():
        return None
    return tuple(exps)


def domain_map(
    G: GridDiagram,
    source: FreeComplex,
    target: FreeComplex,
    domains: Callable[[Hashable], SignedDomains],
    *,
    degree: tuple[int, int] = (0, 0),
    variables: Sequence[int | None] | None = None,
    target_label: Callable[[RectLike], Hashable] | None = None,
    name: str = "",
) -> FreeMap:
    """The map x -> sum sign * v^T(p) V^O(p) target(p) over the domains leaving x.

    Multiplicities are read at the markings of ``G``; ``variables`` sends the O
    of each column of ``G`` to a variable of ``target`` (or to 0).
    """
    if variables is None:
        variables = (0,) * G.n if target.num_u else (None,) * G.n
    target_label = target_label or (lambda p: p.target)
    index = target.index
    terms: list[list[Term]] = []
    for label in source.labels:
        merged: dict[tuple[int, tuple[int, ...]], int] = {}
        for p, sign in domains(label):
            exps = domain_exps(G, p, target, variables)
            if exps is None:
                continue
            key = (index[target_label(p)], exps)
            coeff = sign if target.ring is Ring.INTEGERS else 1
            merged[key] = merged.get(key, 0) + coeff
        row = []
        for (j, exps), coeff in sorted(merged.items()):
            if target.ring is Ring.MOD2:
                coeff %= 2
            if coeff:
                row.append((j, coeff, exps))
        terms.append(row)
    f = FreeMap(source, target, degree, terms, name=name)
    logger.debug("[domain_map] %s: %d terms", name, sum(len(row) for row in terms))
    return f


def add_vectors(ring: Ring, *vectors: Vector, signs: Iterable[int] | None = None) -> Vector:
    """Signed sum of sparse vectors."""
    result: Vector = {}
    signs = list(signs) if signs is not None else [1] * len(vectors)
    for vector, sign in zip(vectors, signs):
        for key, coeff in vector.items():
            value = result.get(key, 0) + sign * coeff
            if ring is Ring.MOD2:
                value %= 2
            if value:
                result[key] = value
            else:
                result.pop(key, None)
    return result


def degree_violations(f: FreeMap) -> list[Hashable]:
    """Source generators with a term of the wrong bidegree; degrees are (Maslov, 2*Alexander)."""
    bad = []
    dm, da2 = f.degree
    for i, row in enumerate(f.terms):
        expected = (f.source.maslov[i] + dm, f.source.alex2[i] + da2)
        if any(f.target.degree_of(j, exps) != expected for j, _, exps in row):
            bad.append(f.source.labels[i])
    return bad


def check_generators(
    check: Callable[[int], list[str]],
    indices: Sequence[int],
    threads: int | None = None,
) -> list[tuple[int, str]]:
    """Run ``check`` on every generator index; failures come back in index order."""
    threads = threads or config.threads()
    if threads <= 1:
        results = [check(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check, indices))
    return [(i, detail) for i, failures in zip(indices, results) for detail in failures]


def generator_indices(complex_: FreeComplex, exhaustive: bool | None, samples: int | None, seed: int | None) -> list[int]:
    """Generators of a grid complex to check: all for small grids, else a seeded sample."""
    from gridhom.complex.verify import EXHAUSTIVE_MAX_N

    if exhaustive is None:
        exhaustive = complex_.grid_size <= EXHAUSTIVE_MAX_N
    if exhaustive:
        return list(range(len(complex_)))
    rng = np.random.default_rng(config.seed() if seed is None else seed)
    count = min(samples if samples is not None else config.samples(), len(complex_))
    return sorted(int(i) for i in rng.choice(len(complex_), size=count, replace=False))
