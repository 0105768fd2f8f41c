"""Generator-by-generator checks of the chain-level identities."""

import logging
from collections.abc import Iterator
from math import factorial

import numpy as np

from gridhom.complex.boundary import boundary, homotopy_H, partial_k, x_marking_of
from gridhom.complex.polynomial import ChainElement, Ring
from gridhom.complex.variants import ComplexVariant
from gridhom.grid.diagram import GridDiagram
from gridhom.grid.states import GridState, enumerate_states
from gridhom.shared import config
from gridhom.shared.schemas import VerificationReport, Violation

logger = logging.getLogger(__name__)

SUITES = ("d_squared", "homotopy", "d1_relations")
EXHAUSTIVE_MAX_N = 4


def sample_states(
    G: GridDiagram,
    exhaustive: bool | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> Iterator[GridState]:
    """All states for small grids, otherwise a seeded sample without repeats."""
    if exhaustive is None:
        exhaustive = G.n <= EXHAUSTIVE_MAX_N
    if exhaustive:
        yield from enumerate_states(G)
        return
    rng = np.random.default_rng(config.seed() if seed is None else seed)
    count = min(samples if samples is not None else config.samples(), factorial(G.n))
    seen: set[GridState] = set()
    while len(seen) < count:
        x = tuple(int(v) for v in rng.permutation(G.n))
        if x not in seen:
            seen.add(x)
            yield x


def verify_identities(
    G: GridDiagram,
    suite: str,
    variant: ComplexVariant,
    S=None,
    exhaustive: bool | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> VerificationReport:
    """Expand ``suite`` on every (or every sampled) generator and list the failures.

    d_squared: ∂∂ = 0. homotopy: H_i∂ + ∂H_i = V_i - V_j for every O_i, with
    X_i in the column of O_j. d1_relations: ∂0∂1 + ∂1∂0 = 0 and
    ∂0∂2 + ∂1∂1 + ∂2∂0 = 0 over F2.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    variant.check(S)
    report = VerificationReport(
        suite=suite,
        diagrams=[str(G)],
        metadata={"variant": variant.label, "mode": "exhaustive" if (exhaustive or (exhaustive is None and G.n <= EXHAUSTIVE_MAX_N)) else "sampled"},
    )
    ring = variant.ring if suite != "d1_relations" else Ring.MOD2
    variables = variant.variable_map(G)

    for x in sample_states(G, exhaustive, samples, seed):
        xi = ChainElement.generator(ring, x, G.n)
        report.checked += 1
        failures: list[str] = []
        if suite == "d_squared":
            residue = boundary(G, variant, boundary(G, variant, xi, S), S)
            if residue:
                failures.append(f"∂∂ = {residue!r}")
        elif suite == "homotopy":
            for i in range(G.n):
                j = x_marking_of(G, i)
                lhs = homotopy_H(G, variant, S, i, boundary(G, variant, xi, S)) + boundary(
                    G, variant, homotopy_H(G, variant, S, i, xi), S
                )
                rhs = ChainElement(ring)
                if variables[i] is not None:
                    rhs = rhs + xi.times_variable(variables[i])
                if variables[j] is not None:
                    rhs = rhs - xi.times_variable(variables[j])
                if lhs != rhs:
                    failures.append(f"H_{i}∂ + ∂H_{i} - (V_{i} - V_{j}) = {(lhs - rhs)!r}")
        else:
            d0 = partial_k(G, 0, xi)
            d1 = partial_k(G, 1, xi)
            first = partial_k(G, 0, d1) + partial_k(G, 1, d0)
            if first:
                failures.append(f"∂0∂1 + ∂1∂0 = {first!r}")
            second = partial_k(G, 0, partial_k(G, 2, xi)) + partial_k(G, 1, d1) + partial_k(G, 2, d0)
            if second:
                failures.append(f"∂0∂2 + ∂1∂1 + ∂2∂0 = {second!r}")
        for detail in failures:
            logger.warning("[verify_identities] %s on %s at %s: %s", suite, G, x, detail)
            report.violations.append(Violation(suite=suite, generator=str(list(x)), detail=detail))

    logger.info(
        "[verify_identities] %s/%s on %s: %d generators, %d violations",
        suite,
        variant.label,
        G,
        report.checked,
        len(report.violations),
    )
    return report
