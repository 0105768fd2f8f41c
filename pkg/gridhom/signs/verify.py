"""Check the sign-assignment axioms on composite domains."""

import logging
from collections import Counter, defaultdict
from collections.abc import Iterator

import numpy as np

from gridhom.grid.diagram import GridDiagram
from gridhom.grid.rectangles import RectLike, compose, rectangles_between, rectangles_from
from gridhom.grid.states import enumerate_states
from gridhom.shared import config
from gridhom.shared.schemas import VerificationReport, Violation

logger = logging.getLogger(__name__)

SUITE = "sign_axioms"
# sampled runs stop after this many draws in a row hit known domains
STALE_DRAWS = 1000


def _annulus_kind(mult: tuple[tuple[int, ...], ...]) -> str | None:
    """'vertical' or 'horizontal' for a multiplicity-one width-one annulus."""
    n = len(mult)
    cells = [(c, r) for c in range(n) for r in range(n) if mult[c][r]]
    if any(mult[c][r] != 1 for c, r in cells) or len(cells) != n:
        return None
    if len({c for c, _ in cells}) == 1:
        return "vertical"
    if len({r for _, r in cells}) == 1:
        return "horizontal"
    return None


def _composites(G: GridDiagram) -> dict[tuple, list[tuple[RectLike, RectLike]]]:
    groups: dict[tuple, list[tuple[RectLike, RectLike]]] = defaultdict(list)
    for x in enumerate_states(G):
        for r1 in rectangles_from(G, x, include_long=True):
            for r2 in rectangles_from(G, r1.target, include_long=True):
                domain = compose(r1, r2)
                groups[(domain.source, domain.target, domain.mult)].append((r1, r2))
    return groups


def _classify(key: tuple, decompositions: list[tuple[RectLike, RectLike]]) -> tuple[str, int | None]:
    """The axiom a domain is subject to, as (name, parity of the sign product).

    Domains no axiom constrains come back with parity None and the reason as
    the name: a closed domain other than a thin annulus, a domain with a
    number of decompositions other than two, or one built from two long
    rectangles.
    """
    source, target, mult = key
    if source == target:
        kind = _annulus_kind(mult)
        if kind == "vertical":
            return "vertical_annulus", 1
        if kind == "horizontal":
            return "horizontal_annulus", 0
        return "closed_not_thin_annulus", None
    if len(decompositions) != 2:
        return f"{len(decompositions)}_decompositions", None
    if any(r1.is_long and r2.is_long for r1, r2 in decompositions):
        return "two_long_rectangles", None
    return "two_decompositions", 1


def _constraint(key: tuple, decompositions: list[tuple[RectLike, RectLike]]) -> tuple[str, int] | None:
    name, parity = _classify(key, decompositions)
    return None if parity is None else (name, parity)


def composite_constraints(G: GridDiagram) -> Iterator[tuple[list[RectLike], int]]:
    """Yield (rectangles whose signs multiply, parity) for every constrained domain.

    Parity 1 means the product of the listed signs must be -1.
    """
    for key, decompositions in _composites(G).items():
        constraint = _constraint(key, decompositions)
        if constraint is None:
            continue
        _, parity = constraint
        if key[0] == key[1]:
            for r1, r2 in decompositions:
                yield [r1, r2], parity
        else:
            (a1, a2), (b1, b2) = decompositions
            yield [a1, a2, b1, b2], parity


def _decompositions_of(G: GridDiagram, source, target, mult) -> list[tuple[RectLike, RectLike]]:
    found = []
    for r1 in rectangles_from(G, source, include_long=True):
        m1 = r1.mult_matrix()
        if any(m1[c][r] > mult[c][r] for c in range(G.n) for r in range(G.n)):
            continue
        for r2 in rectangles_between(G, r1.target, target, include_long=True):
            if compose(r1, r2).mult == mult:
                found.append((r1, r2))
    return found


def _check(S, key, decompositions, constraint) -> str | None:
    name, parity = constraint
    expected = -1 if parity else 1
    if key[0] == key[1]:
        for r1, r2 in decompositions:
            if S(r1) * S(r2) != expected:
                return f"{name}: S(r1)S(r2)={S(r1) * S(r2)} for corners {r1.west},{r1.east}"
        return None
    (a1, a2), (b1, b2) = decompositions
    product = S(a1) * S(a2) * S(b1) * S(b2)
    if product != expected:
        return f"{name}: both decompositions carry the same sign product"
    return None


def verify_sign_axioms(
    G: GridDiagram,
    mode: str = "exhaustive",
    S=None,
    samples: int | None = None,
    seed: int | None = None,
) -> VerificationReport:
    """Check the sign-assignment axioms for ``S`` on the grid size of ``G``.

    Exhaustive mode groups every composite r1*r2 by domain. Sampled mode draws
    composites at random, searches all decompositions of each, and keeps
    drawing until ``samples`` distinct constrained domains are checked (or the
    draws stop turning up new domains). Domains no axiom constrains are
    counted per reason under ``skipped.*`` in the metadata.
    """
    from gridhom.signs.assignment import SignAssignment

    if S is None:
        S = SignAssignment(G.n)
    report = VerificationReport(suite=SUITE, diagrams=[str(G)], metadata={"mode": mode})
    skipped: Counter[str] = Counter()

    def visit(key: tuple, decompositions: list[tuple[RectLike, RectLike]]) -> None:
        name, parity = _classify(key, decompositions)
        if parity is None:
            skipped[name] += 1
            return
        report.checked += 1
        problem = _check(S, key, decompositions, (name, parity))
        if problem:
            logger.warning("[verify_sign_axioms] %s from %s", problem, key[0])
            report.violations.append(Violation(suite=SUITE, generator=str(key[0]), detail=problem))

    if mode == "exhaustive":
        for key, decompositions in _composites(G).items():
            visit(key, decompositions)
    else:
        rng = np.random.default_rng(config.seed() if seed is None else seed)
        target = samples if samples is not None else config.sign_samples()
        seen: set[tuple] = set()
        stale = 0
        while report.checked < target and stale < STALE_DRAWS:
            x = tuple(int(v) for v in rng.permutation(G.n))
            first = rectangles_from(G, x, include_long=True)
            if not first:
                break
            r1 = first[int(rng.integers(len(first)))]
            second = rectangles_from(G, r1.target, include_long=True)
            r2 = second[int(rng.integers(len(second)))]
            domain = compose(r1, r2)
            key = (domain.source, domain.target, domain.mult)
            if key in seen:
                stale += 1
                continue
            stale = 0
            seen.add(key)
            visit(key, _decompositions_of(G, *key))
        report.metadata["target"] = str(target)
        if report.checked < target:
            logger.warning("[verify_sign_axioms] %s: only %d of %d domains found", G, report.checked, target)

    for reason, count in sorted(skipped.items()):
        report.metadata[f"skipped.{reason}"] = str(count)
    logger.info(
        "[verify_sign_axioms] %s: %d domains checked, %d skipped, %d violations",
        G, report.checked, sum(skipped.values()), len(report.violations),
    )
    return report
