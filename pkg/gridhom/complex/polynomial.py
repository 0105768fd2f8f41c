"""Sparse chain elements over F2[V_1..V_n, v] or Z[V_1..V_n, v]."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from enum import Enum
from typing import NamedTuple

from gridhom.grid.states import GridState


class Ring(str, Enum):
    MOD2 = "mod2"
    INTEGERS = "integers"


class Monomial(NamedTuple):
    v_exps: tuple[int, ...]
    dv: int = 0

    @classmethod
    def one(cls, num_vars: int) -> Monomial:
        return cls((0,) * num_vars, 0)

    def times(self, exps: Iterable[tuple[int, int]], dv: int = 0) -> Monomial:
        """Multiply by prod V_i^e for (i, e) in ``exps`` and by v^dv."""
        v_exps = list(self.v_exps)
        for index, e in exps:
            v_exps[index] += e
        return Monomial(tuple(v_exps), self.dv + dv)

    def bidegree(self) -> tuple[int, int]:
        """Contribution to (Maslov, Alexander)."""
        total = sum(self.v_exps)
        return -2 * total + 2 * self.dv, -total


Key = tuple[GridState, Monomial]


class ChainElement:
    """Finitely supported map (state, monomial) -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict[Key, int] | None = None):
        self.ring = ring
        self.terms: dict[Key, int] = {}
        if terms:
            for key, coeff in terms.items():
                self.add_term(key[0], key[1], coeff)

    @classmethod
    def generator(cls, ring: Ring, x: GridState, num_vars: int) -> ChainElement:
        return cls(ring, {(tuple(x), Monomial.one(num_vars)): 1})

    def _normalize(self, coeff: int) -> int:
        return coeff % 2 if self.ring is Ring.MOD2 else coeff

    def add_term(self, x: GridState, mono: Monomial, coeff: int) -> None:
        key = (x, mono)
        value = self._normalize(self.terms.get(key, 0) + coeff)
        if value:
            self.terms[key] = value
        else:
            self.terms.pop(key, None)

    def __iter__(self) -> Iterator[tuple[GridState, Monomial, int]]:
        for (x, mono), coeff in self.terms.items():
            yield x, mono, coeff

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __add__(self, other: ChainElement) -> ChainElement:
        result = self.copy()
        for x, mono, coeff in other:
            result.add_term(x, mono, coeff)
        return result

    def __sub__(self, other: ChainElement) -> ChainElement:
        return self + other.scale(-1)

    def __neg__(self) -> ChainElement:
        return self.scale(-1)

    def copy(self) -> ChainElement:
        result = ChainElement(self.ring)
        result.terms = dict(self.terms)
        return result

    def scale(self, c: int) -> ChainElement:
        result = ChainElement(self.ring)
        for x, mono, coeff in self:
            result.add_term(x, mono, coeff * c)
        return result

    def times_variable(self, index: int, power: int = 1) -> ChainElement:
        result = ChainElement(self.ring)
        for x, mono, coeff in self:
            result.add_term(x, mono.times([(index, power)]), coeff)
        return result

    def times_v(self, power: int = 1) -> ChainElement:
        result = ChainElement(self.ring)
        for x, mono, coeff in self:
            result.add_term(x, mono.times((), power), coeff)
        return result

    def reduce_mod2(self) -> ChainElement:
        return ChainElement(Ring.MOD2, dict(self.terms))

    def restrict(self, keep) -> ChainElement:
        """Terms whose state satisfies ``keep``."""
        result = ChainElement(self.ring)
        result.terms = {key: coeff for key, coeff in self.terms.items() if keep(key[0])}
        return result

    def map_states(self, f) -> ChainElement:
        result = ChainElement(self.ring)
        for x, mono, coeff in self:
            result.add_term(f(x), mono, coeff)
        return result

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (x, mono), coeff in sorted(self.terms.items()):
            powers = "".join(f"V{i}^{e}" for i, e in enumerate(mono.v_exps) if e)
            if mono.dv:
                powers += f"v^{mono.dv}"
            parts.append(f"{coeff}*{powers or '1'}*{list(x)}")
        return " + ".join(parts)


def sum_elements(ring: Ring, elements: Iterable[ChainElement]) -> ChainElement:
    total = ChainElement(ring)
    for element in elements:
        for x, mono, coeff in element:
            total.add_term(x, mono, coeff)
    return total
