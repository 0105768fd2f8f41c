"""Command-line front end: ``gridhom <command> [options]``.

Exit status is 0 when the run reports no violations, 1 when a computation
fails or finds violations, and 2 on usage errors.
"""

import argparse
import logging
import os
import sys
from collections.abc import Sequence
from fractions import Fraction

from pydantic import ValidationError

from gridhom.shared import config
from gridhom.shared.errors import BadLocation, GridHomologyError, LibraryError
from gridhom.shared.schemas import DiagramDocument, HomologyTable, Report, RunConfig, VerificationReport

logger = logging.getLogger(__name__)

COMMANDS = ("homology", "ghl", "invariants", "spectral", "verify", "moves", "skein", "library")
VERIFY_SUITES = (
    "d_squared",
    "homotopy",
    "d1_relations",
    "sign_axioms",
    "commutation",
    "stabilization",
    "uct",
    "skein_maps",
    "skein_les",
)
ALL_VARIANTS = ("gc_minus", "gc_hat", "gcl", "gcl_signed_z")
# settings echoed into the report; thread count is left out so output does not depend on it
_SETTING_FIELDS = (
    "variant", "ring", "window_margin", "v_depth", "r_max", "suite", "n", "exhaustive", "samples", "seed",
    "move", "location", "column",
)


# -- inputs -------------------------------------------------------------------------


def _staircase(n: int):
    """The n x n unknot with X one row above each O."""
    from gridhom.grid.diagram import GridDiagram

    return GridDiagram(n=n, o_rows=tuple(range(n)), x_rows=tuple((c + 1) % n for c in range(n)), name=f"unknot{n}")


def _diagram(cfg: RunConfig):
    from gridhom.grid.library import resolve_diagram

    if cfg.knot:
        return resolve_diagram(cfg.knot)
    if cfg.n:
        return _staircase(cfg.n)
    raise LibraryError(f"{cfg.command} needs --knot or --n")


def _document(G) -> DiagramDocument:
    return DiagramDocument(n=G.n, o_rows=list(G.o_rows), x_rows=list(G.x_rows), name=G.name)


def _apply_environment(cfg: RunConfig) -> None:
    """Route window, sampling and thread settings through the config layer."""
    overrides = {
        "GRIDHOM_WINDOW_MARGIN": cfg.window_margin,
        "GRIDHOM_V_DEPTH": cfg.v_depth,
        "GRIDHOM_SAMPLES": cfg.samples,
        "GRIDHOM_SEED": cfg.seed,
        "GRIDHOM_THREADS": cfg.threads,
    }
    for key, value in overrides.items():
        if value is not None:
            os.environ[key] = str(value)


def _variant_name(cfg: RunConfig) -> str:
    if cfg.ring == "integers" and cfg.variant.lower() in ("gcl", "cgcl"):
        return "gcl_signed_z"
    return cfg.variant


# -- commands -----------------------------------------------------------------------


def _homology(cfg: RunConfig, report: Report) -> None:
    from gridhom.homology import homology_table

    G = _diagram(cfg)
    report.diagram = _document(G)
    report.tables.append(homology_table(G, _variant_name(cfg)))


def _ghl(cfg: RunConfig, report: Report) -> None:
    from gridhom.grid.diagram import component_count
    from gridhom.homology import homology_table

    G = _diagram(cfg)
    report.diagram = _document(G)
    report.tables.append(homology_table(G, "gcl"))
    report.extra["components"] = component_count(G)
    if component_count(G) == 1:
        report.tables.append(homology_table(G, "gc_minus"))


def _invariants(cfg: RunConfig, report: Report) -> None:
    from gridhom.homology import decompose_over_U, invariants

    G = _diagram(cfg)
    report.diagram = _document(G)
    report.invariants = invariants(G)
    report.decomposition = decompose_over_U(G)


def _spectral(cfg: RunConfig, report: Report) -> None:
    from gridhom.homology import del1_star, spectral_pages

    G = _diagram(cfg)
    report.diagram = _document(G)
    report.spectral = spectral_pages(G, r_max=cfg.r_max)
    report.del1 = del1_star(G, seed=cfg.seed)


def _commutation_index(G, cfg: RunConfig) -> int:
    from gridhom.grid.moves import legal_moves

    if cfg.column is not None:
        return cfg.column
    for kind, location in legal_moves(G):
        if kind in ("commutation", "switch"):
            return location
    raise BadLocation(f"{G} has no column commutation or switch")


def _quadruple(cfg: RunConfig):
    from gridhom.grid.library import BUILTIN_PREFIX, builtin
    from gridhom.grid.skein import skein_quadruple

    G = _diagram(cfg)
    column = cfg.column
    if column is None and cfg.knot and cfg.knot.startswith(BUILTIN_PREFIX):
        column = builtin(cfg.knot).column
    if column is None:
        raise BadLocation("a skein quadruple needs --column")
    return G, skein_quadruple(G, column)


def _verify_suite(cfg: RunConfig) -> list[VerificationReport]:
    from gridhom.complex.variants import ComplexVariant
    from gridhom.complex.verify import SUITES, verify_identities
    from gridhom.signs.assignment import SignAssignment

    suite = cfg.suite or "d_squared"
    exhaustive = True if cfg.exhaustive else None
    if suite in SUITES:
        G = _diagram(cfg)
        names = ALL_VARIANTS if cfg.variant == "all" else (cfg.variant,)
        reports = []
        for name in names:
            variant = ComplexVariant.parse(name)
            S = SignAssignment(G.n) if variant.signed else None
            reports.append(verify_identities(G, suite, variant, S, exhaustive=exhaustive, seed=cfg.seed))
        return reports
    if suite == "sign_axioms":
        from gridhom.signs.verify import verify_sign_axioms

        G = _diagram(cfg)
        mode = "exhaustive" if cfg.exhaustive or G.n <= 3 else "sampled"
        return [verify_sign_axioms(G, mode, samples=cfg.samples, seed=cfg.seed)]
    if suite == "commutation":
        from gridhom.maps.superimposed import commutation_check

        G = _diagram(cfg)
        return [commutation_check(G, _commutation_index(G, cfg), exhaustive=exhaustive, seed=cfg.seed)]
    if suite == "stabilization":
        from gridhom.grid.moves import stabilize_xsw
        from gridhom.maps.stabilization import stabilization_cone_check

        G = _diagram(cfg)
        G_prime = stabilize_xsw(G, cfg.column or 0)
        return [stabilization_cone_check(G, G_prime, exhaustive=exhaustive, seed=cfg.seed)]
    if suite == "uct":
        from gridhom.homology import uct_check

        return [uct_check(_diagram(cfg))]
    if suite == "skein_maps":
        from gridhom.maps.skein import skein_maps_suite

        _, Q = _quadruple(cfg)
        return [skein_maps_suite(Q, exhaustive=exhaustive, seed=cfg.seed)[1]]
    if suite == "skein_les":
        from gridhom.maps.skein import skein_les_check

        _, Q = _quadruple(cfg)
        return [skein_les_check(Q)]
    raise LibraryError(f"unknown suite {suite!r}; choose from {', '.join(VERIFY_SUITES)}")


def _verify(cfg: RunConfig, report: Report) -> None:
    if cfg.knot or cfg.n:
        report.diagram = _document(_diagram(cfg))
    report.reports = _verify_suite(cfg)


def _moves(cfg: RunConfig, report: Report) -> None:
    from gridhom.grid.diagram import serialize_diagram
    from gridhom.grid.moves import apply_move, legal_moves

    G = _diagram(cfg)
    report.diagram = _document(G)
    if cfg.move is None:
        report.extra["legal_moves"] = [[kind, location] for kind, location in legal_moves(G)]
        return
    if cfg.location is None:
        raise BadLocation(f"{cfg.move} needs --location")
    result = apply_move(G, cfg.move, cfg.location)
    report.extra["result"] = _document(result).model_dump()
    report.extra["result_text"] = serialize_diagram(result)


def _skein(cfg: RunConfig, report: Report) -> None:
    from gridhom.maps.skein import skein_les_check, skein_maps_suite

    G, Q = _quadruple(cfg)
    report.diagram = _document(G)
    exhaustive = True if cfg.exhaustive else None
    _, maps_report = skein_maps_suite(Q, exhaustive=exhaustive, seed=cfg.seed)
    report.reports = [maps_report, skein_les_check(Q)]
    report.extra["quadruple"] = {
        "minus": _document(Q.minus).model_dump(),
        "zero": _document(Q.zero).model_dump(),
        "zero_prime": _document(Q.zero_prime).model_dump(),
    }


def _library(cfg: RunConfig, report: Report) -> None:
    from gridhom.grid.library import library

    report.extra["entries"] = [
        {
            "name": entry.name,
            "kind": entry.kind,
            "n": entry.diagram.n,
            "components": entry.components,
            "description": entry.description,
        }
        for entry in library().values()
    ]


_HANDLERS = {
    "homology": _homology,
    "ghl": _ghl,
    "invariants": _invariants,
    "spectral": _spectral,
    "verify": _verify,
    "moves": _moves,
    "skein": _skein,
    "library": _library,
}


def run(cfg: RunConfig) -> Report:
    """Run one command and collect everything it produced into a report."""
    _apply_environment(cfg)
    report = Report(
        command=cfg.command,
        settings={key: getattr(cfg, key) for key in _SETTING_FIELDS if getattr(cfg, key) is not None},
    )
    if cfg.knot:
        report.settings["knot"] = cfg.knot
    _HANDLERS[cfg.command](cfg, report)
    for sub in report.reports:
        report.violations.extend(sub.violations)
    logger.info("[run] %s: %d violations", cfg.command, len(report.violations))
    return report


def exit_status(report: Report) -> int:
    return 1 if report.violations else 0


# -- output -------------------------------------------------------------------------


def _fmt_half(a: Fraction) -> str:
    return str(int(a)) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def _table_lines(table: HomologyTable) -> list[str]:
    w = table.window
    lines = [
        f"{table.variant} ({table.ring}), A in [{_fmt_half(w.a_min)}, {_fmt_half(w.a_max)}], "
        f"M - 2A in [{w.band_min}, {w.band_max}]",
        f"{'m':>5} {'a':>6} {'rank':>5}  torsion",
    ]
    for row in sorted(table.rows, key=lambda r: (-r.a, -r.m)):
        torsion = ",".join(f"Z/{q}" for q in row.torsion)
        lines.append(f"{row.m:>5} {_fmt_half(row.a):>6} {row.rank:>5}  {torsion}".rstrip())
    for action in sorted(table.actions, key=lambda r: (-r.a, -r.m, r.which)):
        lines.append(f"  {action.which} from ({action.m}, {_fmt_half(action.a)}): rank {action.rank}")
    return lines


def emit_report(report: Report, output_format: str = "table") -> str:
    """Serialize a report as the versioned JSON document or as human-readable tables."""
    if output_format == "json":
        return report.model_dump_json(indent=2) + "\n"
    lines = [f"# {report.command}"]
    if report.diagram is not None:
        d = report.diagram
        lines.append(f"diagram {d.name or 'grid'} (n={d.n}) O={d.o_rows} X={d.x_rows}")
    for table in report.tables:
        lines.extend(["", *_table_lines(table)])
    if report.invariants is not None:
        inv = report.invariants
        lines.append(f"tau={inv.tau} tau+={inv.tau_plus} tau+_U={inv.tau_plus_u} rho={inv.rho}")
    if report.decomposition is not None and report.decomposition.tower is not None:
        m, a = report.decomposition.tower
        lines.append(f"U-tower at ({m}, {_fmt_half(a)}), {len(report.decomposition.torsion)} torsion summand(s)")
    for page in report.spectral:
        total = sum(row.dim for row in page.dims)
        lines.append(f"E_{page.r}: total rank {total}" + (f", collapsed at E_{page.collapsed_at}" if page.collapsed_at else ""))
    if report.del1 is not None:
        lines.append(
            f"del1*: U-torsion image {report.del1.image_u_torsion}, squares to zero {report.del1.squares_to_zero}, "
            f"identically zero {report.del1.identically_zero}"
        )
    for sub in report.reports:
        lines.append(f"suite {sub.suite}: {sub.checked} checked, {len(sub.violations)} violation(s)")
        lines.extend(f"  {key}: {value}" for key, value in sorted(sub.metadata.items()))
    for key, value in report.extra.items():
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  {item}" for item in value)
        elif isinstance(value, str):
            lines.extend([f"{key}:", value.rstrip()])
        else:
            lines.append(f"{key}: {value}")
    lines.append(f"violations: {len(report.violations)}")
    lines.extend(f"  [{v.suite}] {v.generator}: {v.detail}" for v in report.violations)
    return "\n".join(lines) + "\n"


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridhom", description="Combinatorial grid homology of knots and links.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log INFO (-v) or DEBUG (-vv)")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--knot", help="builtin:<name>, a diagram file, or inline text 'n=..;O=..;X=..'")
    common.add_argument("--n", type=int, help="use the n x n staircase unknot")
    common.add_argument("--variant", help="gc_minus, gc_hat, gcl, gcl_signed_z (verify also takes 'all')")
    common.add_argument("--ring", choices=["mod2", "integers"], default="mod2")
    common.add_argument("--window", dest="window_margin", type=int, help="Alexander margin below the lowest state")
    common.add_argument("--v-depth", type=int, help="v-steps above the highest state band")
    common.add_argument("--rmax", dest="r_max", type=int, default=4)
    common.add_argument("--suite", choices=VERIFY_SUITES)
    common.add_argument("--exhaustive", action="store_true")
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--format", dest="output_format", choices=["table", "json"], default="table")
    common.add_argument("--move", help="commutation, switch, row_commutation, row_switch, stabilize_XSW, destabilize_XSW")
    common.add_argument("--location", type=int)
    common.add_argument("--column", type=int, help="column index for commutations, stabilizations and crossings")
    common.add_argument("-o", "--output", help="write the report here instead of standard output")

    helps = {
        "homology": "homology table of one complex variant",
        "ghl": "GHL table (collapsed for links) with GH- alongside for knots",
        "invariants": "tau, tau+, tau+_U, rho and the U-module decomposition",
        "spectral": "pages of the v-filtration spectral sequence and the del1* report",
        "verify": "identity and axiom suites",
        "moves": "list legal grid moves or apply one",
        "skein": "skein maps and the exact triangle at a crossing",
        "library": "list built-in diagrams",
    }
    for command in COMMANDS:
        sub.add_parser(command, parents=[common], help=helps[command])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {key: value for key, value in vars(args).items() if key in RunConfig.model_fields and value is not None}
    values.setdefault("variant", "all" if args.command == "verify" else "gc_minus")
    values.setdefault("seed", config.seed())
    values.setdefault("threads", config.threads())
    values["exhaustive"] = bool(args.exhaustive)
    return RunConfig(**values)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: config.log_level(), 1: "INFO"}.get(args.verbose, "DEBUG")
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except ValidationError as e:
        parser.error(str(e))
    try:
        report = run(cfg)
    except GridHomologyError as e:
        logger.error("[main] %s failed: %s", cfg.command, e)
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    text = emit_report(report, cfg.output_format)
    if cfg.output:
        with open(cfg.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return exit_status(report)


if __name__ == "__main__":
    sys.exit(main())
