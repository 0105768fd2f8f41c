"""Built-in grid diagrams shipped under ``data/library``.

Each ``<name>.grid`` file is the diagram text format with three extra keys:
``kind`` (knot, link or skein), ``components`` and ``description``; skein
entries also carry ``column``, the crossing column of the G+ diagram.
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel

from gridhom.grid.diagram import GridDiagram, component_count, parse_diagram
from gridhom.shared import config
from gridhom.shared.errors import LibraryError, MalformedDiagram

logger = logging.getLogger(__name__)

BUILTIN_PREFIX = "builtin:"


class LibraryEntry(BaseModel):
    name: str
    kind: Literal["knot", "link", "skein"]
    components: int
    description: str = ""
    column: int | None = None
    diagram: GridDiagram


def _extra_fields(text: str) -> dict[str, str]:
    fields = {}
    for line in text.splitlines():
        key, sep, value = line.strip().partition("=")
        if sep and not key.startswith("#"):
            fields[key.strip()] = value.strip()
    return fields


def load_entry(path: Path) -> LibraryEntry:
    """Read one library file and check its stated component count against the diagram."""
    text = path.read_text()
    fields = _extra_fields(text)
    try:
        entry = LibraryEntry(
            name=path.stem,
            kind=fields.get("kind", "knot"),
            components=int(fields.get("components", "1")),
            description=fields.get("description", ""),
            column=int(fields["column"]) if "column" in fields else None,
            diagram=parse_diagram(text),
        )
    except (ValueError, MalformedDiagram) as e:
        raise LibraryError(f"library file {path.name} is malformed: {e}") from e
    found = component_count(entry.diagram)
    if found != entry.components:
        raise LibraryError(f"{entry.name} states {entry.components} component(s), the diagram has {found}")
    if entry.kind == "knot" and found != 1:
        raise LibraryError(f"{entry.name} is listed as a knot but has {found} components")
    if entry.kind == "skein" and entry.column is None:
        raise LibraryError(f"skein entry {entry.name} has no crossing column")
    return entry


@lru_cache(maxsize=4)
def library(directory: Path | None = None) -> dict[str, LibraryEntry]:
    directory = directory or config.LIBRARY_DIR
    entries = {}
    for path in sorted(directory.glob("*.grid")):
        entry = load_entry(path)
        entries[entry.name] = entry
    logger.info("[library] %d entries from %s", len(entries), directory)
    return entries


def builtin(name: str) -> LibraryEntry:
    name = name.removeprefix(BUILTIN_PREFIX)
    entries = library()
    if name not in entries:
        raise LibraryError(f"no built-in diagram {name!r}; available: {', '.join(entries)}")
    return entries[name]


def resolve_diagram(spec: str) -> GridDiagram:
    """A diagram from ``builtin:<name>``, a path to a diagram file, or inline diagram text."""
    if spec.startswith(BUILTIN_PREFIX):
        return builtin(spec).diagram
    path = Path(spec)
    if "\n" not in spec and path.is_file():
        return parse_diagram(path.read_text())
    if "=" in spec:
        return parse_diagram(spec.replace(";", "\n"))
    raise LibraryError(f"{spec!r} is neither a built-in, a diagram file nor diagram text")


def regression_values(path: Path | None = None) -> dict[str, Any]:
    """Stored GH-hat ranks and τ per knot entry."""
    path = path or config.REGRESSION_PATH
    try:
        return json.loads(path.read_text())
    except FileNotFoundError as e:
        raise LibraryError(f"regression values missing at {path}") from e
