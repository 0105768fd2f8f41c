#!/usr/bin/env python3
"""Regenerate (or check) the stored GH-hat ranks and τ of the built-in library."""

import argparse
import json
import sys
from fractions import Fraction

from gridhom.grid.diagram import component_count
from gridhom.grid.library import library, regression_values
from gridhom.grid.skein import skein_quadruple
from gridhom.homology import homology_table, tau
from gridhom.shared.config import REGRESSION_PATH

PROVENANCE = (
    "DERIVED: produced by scripts/build_regression_values.py and audited against "
    "tau = (p-1)(q-1)/2 for torus knots and the symmetry of knot Floer homology"
)


def _half(value: Fraction) -> int | str:
    return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def knot_values(entry) -> dict:
    table = homology_table(entry.diagram, "gc_hat", actions=False)
    rows = [{"m": row.m, "a": _half(row.a), "rank": row.rank} for row in table.rows]
    return {"tau": tau(entry.diagram), "gh_hat": rows}


def build() -> dict:
    values: dict = {"_provenance": PROVENANCE, "knots": {}, "links": {}}
    for name, entry in library().items():
        if entry.kind == "knot":
            print(f"Computing {name} (n={entry.diagram.n})...")
            values["knots"][name] = knot_values(entry)
        else:
            values["links"][name] = {"components": entry.components}
            if entry.kind == "skein":
                quadruple = skein_quadruple(entry.diagram, entry.column)
                values["links"][name]["zero_components"] = component_count(quadruple.zero)
    return values


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--check", action="store_true", help="compare with the stored values instead of writing")
    args = parser.parse_args()

    values = build()
    if args.check:
        stored = regression_values()
        stored.pop("_provenance", None)
        values.pop("_provenance", None)
        mismatched = [
            name
            for group in ("knots", "links")
            for name in set(values[group]) | set(stored.get(group, {}))
            if values[group].get(name) != stored.get(group, {}).get(name)
        ]
        if mismatched:
            print(f"Mismatched entries: {', '.join(sorted(mismatched))}")
            sys.exit(1)
        print(f"All {sum(len(values[g]) for g in ('knots', 'links'))} entries match {REGRESSION_PATH}")
        return

    with open(REGRESSION_PATH, "w") as f:
        json.dump(values, f, indent=2)
    print(f"Written to {REGRESSION_PATH}")


if __name__ == "__main__":
    main()
