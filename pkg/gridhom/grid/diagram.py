"""Toroidal grid diagrams, their text format and link components."""

import logging
from collections.abc import Mapping
from functools import lru_cache
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, model_validator

from gridhom.shared.errors import (
    MalformedDiagram,
    MarkingCollision,
    NotAPermutation,
    SizeMismatch,
)

logger = logging.getLogger(__name__)


class GridDiagram(BaseModel):
    """An n x n toroidal grid diagram.

    Columns run west to east and rows south to north. ``o_rows[c]`` is the row
    of the O-marking in column c and ``x_rows[c]`` the row of the X-marking.
    The O-marking of column c is the marking O_c and carries the variable V_c.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    o_rows: tuple[int, ...]
    x_rows: tuple[int, ...]
    name: str | None = None

    @model_validator(mode="after")
    def _check_markings(self) -> "GridDiagram":
        if self.n < 1:
            raise SizeMismatch(f"grid size must be positive, got {self.n}")
        if len(self.o_rows) != self.n or len(self.x_rows) != self.n:
            raise SizeMismatch(
                f"expected {self.n} rows per marking type, got O={len(self.o_rows)} X={len(self.x_rows)}"
            )
        for label, rows in (("O", self.o_rows), ("X", self.x_rows)):
            if sorted(rows) != list(range(self.n)):
                raise NotAPermutation(f"{label} rows {list(rows)} are not a permutation of 0..{self.n - 1}")
        if self.n >= 2:
            for c in range(self.n):
                if self.o_rows[c] == self.x_rows[c]:
                    raise MarkingCollision(f"column {c} has O and X in row {self.o_rows[c]}")
        return self

    def __str__(self) -> str:
        return self.name or f"grid(n={self.n})"


class MarkingTables(NamedTuple):
    o_col: tuple[int, ...]  # column of the O in each row
    x_col: tuple[int, ...]  # column of the X in each row


@lru_cache(maxsize=256)
def marking_tables(G: GridDiagram) -> MarkingTables:
    o_col = [0] * G.n
    x_col = [0] * G.n
    for c in range(G.n):
        o_col[G.o_rows[c]] = c
        x_col[G.x_rows[c]] = c
    return MarkingTables(tuple(o_col), tuple(x_col))


def _parse_rows(raw: str) -> tuple[int, ...]:
    raw = raw.strip().strip("[]")
    if not raw:
        return ()
    try:
        return tuple(int(part) for part in raw.split(","))
    except ValueError as e:
        raise MalformedDiagram(f"bad row list {raw!r}") from e


def parse_diagram(spec: str | Mapping | BaseModel) -> GridDiagram:
    """Parse a diagram from its text format or a structured document.

    The text format is ``n=<int>``, ``O=<rows>``, ``X=<rows>`` and an optional
    ``name=<string>``, one per line.
    """
    if isinstance(spec, GridDiagram):
        return spec
    if isinstance(spec, BaseModel):
        spec = spec.model_dump()
    if isinstance(spec, Mapping):
        try:
            return GridDiagram(
                n=int(spec["n"]),
                o_rows=tuple(spec["o_rows"]),
                x_rows=tuple(spec["x_rows"]),
                name=spec.get("name"),
            )
        except KeyError as e:
            raise MalformedDiagram(f"diagram document is missing {e}") from e

    fields: dict[str, str] = {}
    for line in spec.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise MalformedDiagram(f"expected key=value, got {line!r}")
        fields[key.strip()] = value.strip()

    missing = [key for key in ("n", "O", "X") if key not in fields]
    if missing:
        raise MalformedDiagram(f"diagram text is missing {', '.join(missing)}")
    try:
        n = int(fields["n"])
    except ValueError as e:
        raise MalformedDiagram(f"bad grid size {fields['n']!r}") from e
    return GridDiagram(
        n=n,
        o_rows=_parse_rows(fields["O"]),
        x_rows=_parse_rows(fields["X"]),
        name=fields.get("name") or None,
    )


def serialize_diagram(G: GridDiagram) -> str:
    lines = [
        f"n={G.n}",
        "O=" + ",".join(str(r) for r in G.o_rows),
        "X=" + ",".join(str(r) for r in G.x_rows),
    ]
    if G.name:
        lines.append(f"name={G.name}")
    return "\n".join(lines) + "\n"


def diagram_from_document(doc: Mapping | BaseModel) -> GridDiagram:
    return parse_diagram(doc)


def transpose(G: GridDiagram) -> GridDiagram:
    """Reflect the diagram across the diagonal, exchanging rows and columns."""
    tables = marking_tables(G)
    return GridDiagram(n=G.n, o_rows=tables.o_col, x_rows=tables.x_col, name=G.name)


@lru_cache(maxsize=256)
def link_components(G: GridDiagram) -> tuple[tuple[int, ...], ...]:
    """Partition the columns into link components.

    From the O in column c, walk along its row to the X there, then up or down
    that column to its O. The cycles of this walk are the components, each
    given as its sorted columns; components are ordered by smallest column.
    """
    x_col = marking_tables(G).x_col
    seen = [False] * G.n
    components = []
    for start in range(G.n):
        if seen[start]:
            continue
        cycle = []
        c = start
        while not seen[c]:
            seen[c] = True
            cycle.append(c)
            c = x_col[G.o_rows[c]]
        components.append(tuple(sorted(cycle)))
    logger.debug("[link_components] %s has %d component(s)", G, len(components))
    return tuple(components)


def component_count(G: GridDiagram) -> int:
    return len(link_components(G))
