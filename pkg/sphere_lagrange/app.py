#!/usr/bin/env python
"""
Sphere Lagrange - exact stereographic correspondences, horoballs and Lagrange spectra.

Command-line runner. Exit status 0 on success, 2 on usage errors and 3 when an exact
check fails; the failing certificate is printed on stderr as JSON.
"""

import argparse
import io
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from sphere_lagrange import __version__
from sphere_lagrange.controllers.approximation import (
    Space,
    best_approximations,
    estimate_lagrange,
    improving_records,
    sphere_lagrange_from_boundary,
    transfer_identity_sampled,
)
from sphere_lagrange.controllers.geometry import field_of_case, inverse_height, map_to_sphere, unmap, verify_phi_sampled
from sphere_lagrange.controllers.horospheres import (
    boundary_horoball,
    certify_pairs,
    horoball_on_sphere,
    tangency_graph,
    verify_tangent_or_disjoint,
)
from sphere_lagrange.controllers.spectra import brute_force_markoff, discrete_spectrum, markoff_tree, write_spectrum_csv
from sphere_lagrange.models.boundary_field import BoundaryField
from sphere_lagrange.models.exceptions import (
    ConfigError,
    InvariantViolationError,
    RenderingUnsupportedError,
    UnknownCaseError,
    UsageError,
)
from sphere_lagrange.models.figure_data import figure_points
from sphere_lagrange.models.k_element import KElement, parse_element
from sphere_lagrange.models.markoff import EQUATIONS, SQRT2_MARKOFF
from sphere_lagrange.models.run_config import LOG_LEVELS, RunConfig
from sphere_lagrange.models.space_spec import SpaceCase, SpherePoint
from sphere_lagrange.models.target import TargetNumber
from sphere_lagrange.utils import interval
from sphere_lagrange.utils.graph_exporter import export_graph, graph_to_dot, graph_to_json, graph_to_svg
from sphere_lagrange.utils.logger import configure_logging, get_logger
from sphere_lagrange.utils.pdf_generator import FigurePDFGenerator
from sphere_lagrange.utils.run_archive import RunArchive
from sphere_lagrange.views import formatters

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATION = 3

GRAPH_FORMATS = ("dot", "json", "svg", "pdf")


@dataclass
class CommandResult:
    """Output of one subcommand: a JSON payload, its text rendering and an optional failure certificate."""

    payload: dict[str, Any]
    text: str
    violation: InvariantViolationError | None = None
    binary: bytes | None = None


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset by the subparser
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key = value file or run archive (.json)")
    common.add_argument("--log-level", default=argparse.SUPPRESS, choices=LOG_LEVELS, type=str.upper)
    common.add_argument("--log-file", default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to PATH instead of stdout")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS, help="initial interval bits")
    common.add_argument("--digits", type=int, default=argparse.SUPPRESS, help="digits of printed decimals")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="sphere-lagrange",
        description="Exact stereographic correspondences, horoballs and Lagrange spectra.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("map", parents=[common], help="map a boundary element to its sphere point")
    p.add_argument("--case", required=True)
    p.add_argument("z")

    p = sub.add_parser("unmap", parents=[common], help="boundary element of a sphere point")
    p.add_argument("--case", required=True)
    p.add_argument("--allow-infinity", action="store_true")
    p.add_argument("point")

    p = sub.add_parser("height", parents=[common], help="heights of a boundary element or sphere point")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--case")
    target.add_argument("--field")
    p.add_argument("value")

    p = sub.add_parser("verify-phi", parents=[common], help="check the stretching conditions on random pairs")
    p.add_argument("--case", default="all")
    p.add_argument("--samples", type=int)
    p.add_argument("--max-height", type=int, default=1000)
    p.add_argument("--transfer", action="store_true", help="also check the transfer identity")

    p = sub.add_parser("horoball", parents=[common], help="horoball at a boundary element")
    space = p.add_mutually_exclusive_group(required=True)
    space.add_argument("--case")
    space.add_argument("--field", help="Ford ball in the upper half-space of the boundary field")
    p.add_argument("--against", help="second element; reports whether the two balls are tangent")
    p.add_argument("z")

    p = sub.add_parser("graph", parents=[common], help="tangency graph of horoballs up to a height")
    p.add_argument("--case", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--format", choices=GRAPH_FORMATS, default="dot")
    p.add_argument("--certify", action="store_true", help="classify every pair with the exact gap")

    p = sub.add_parser("markoff", parents=[common], help="solutions of a Markoff-type equation")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--equation", choices=sorted(EQUATIONS), default=SQRT2_MARKOFF.name)
    values = p.add_mutually_exclusive_group()
    values.add_argument("--xs", action="store_true", help="distinct x-values only")
    values.add_argument("--ys", action="store_true", help="distinct y-values only")
    p.add_argument("--check", action="store_true", help="compare with the exhaustive search")

    p = sub.add_parser("spectrum", parents=[common], help="initial discrete part of a Lagrange spectrum")
    p.add_argument("--case", required=True)
    p.add_argument("--bound", type=int, default=100)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("estimate-lagrange", parents=[common], help="finite-height Lagrange number estimate")
    p.add_argument("--target", required=True)
    p.add_argument("--space", required=True, help="space case (s1-iii) or boundary field (Q, Q(sqrt-1))")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--records", action="store_true", help="list the improving approximations")
    p.add_argument("--on-sphere", help="scale a boundary estimate to this case's sphere")

    p = sub.add_parser("figures", parents=[common], help="regenerate the figure data of all cases")
    p.add_argument("--bound", type=int, help="height bound of the graphs (default: largest figure height)")
    return parser


def _effective_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    path = getattr(args, "config", None)
    if path:
        if path.lower().endswith(RunArchive.ARCHIVE_EXTENSION):
            loaded = RunArchive.load_config(path)
            if loaded is None:
                raise ConfigError(f"cannot read run archive {path}")
            config = loaded
        else:
            config = RunConfig.from_file(path)
    flags = {
        "seed": getattr(args, "seed", None),
        "threads": getattr(args, "threads", None),
        "precision": getattr(args, "precision", None),
        "digits": getattr(args, "digits", None),
        "samples": getattr(args, "samples", None),
        "log_level": getattr(args, "log_level", None),
        "log_file": getattr(args, "log_file", None),
    }
    return config.merged(flags)


def _space(tag: str) -> Space:
    try:
        return SpaceCase.from_tag(tag)
    except UnknownCaseError:
        return BoundaryField.from_tag(tag)


def _cases(tag: str) -> list[SpaceCase]:
    return list(SpaceCase) if tag.lower() == "all" else [SpaceCase.from_tag(tag)]


def _stringify(data: dict[str, Any]) -> dict[str, str]:
    return {str(key): str(value) for key, value in data.items()}


def _k_height(z: KElement) -> int | None:
    return None if z.is_infinite else z.height()


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------


def cmd_map(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    case = SpaceCase.from_tag(args.case)
    z = parse_element(args.z, field_of_case(case))
    point = map_to_sphere(z, case)
    payload = {"case": case.value, "z": str(z), "point": str(point), "height": point.q, "k_height": _k_height(z)}
    return CommandResult(payload, formatters.format_mapping(point))


def cmd_unmap(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    case = SpaceCase.from_tag(args.case)
    point = SpherePoint.parse(case, args.point)
    z = unmap(point, allow_infinity=args.allow_infinity)
    payload = {"case": case.value, "point": str(point), "z": str(z), "k_height": _k_height(z)}
    return CommandResult(payload, formatters.format_element(z))


def cmd_height(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    if args.field:
        z = parse_element(args.value, BoundaryField.from_tag(args.field))
        return CommandResult({"z": str(z), "k_height": _k_height(z)}, formatters.format_element(z))
    case = SpaceCase.from_tag(args.case)
    if "," in args.value:
        point = SpherePoint.parse(case, args.value)
    else:
        point = map_to_sphere(parse_element(args.value, field_of_case(case)), case)
    boundary_height = inverse_height(point)
    payload = {"case": case.value, "point": str(point), "sphere_height": point.q, "k_height": boundary_height}
    return CommandResult(payload, formatters.format_heights(point, boundary_height))


def cmd_verify_phi(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    summaries = []
    for case in _cases(args.case):
        summaries.append(verify_phi_sampled(case, config.samples, config.seed, args.max_height))
        if args.transfer:
            summaries.append(transfer_identity_sampled(case, config.samples, config.seed, args.max_height))
    payload = {"seed": config.seed, "samples": config.samples, "results": [s.to_dict() for s in summaries]}
    violation = None
    failed = [s for s in summaries if not s.ok]
    if failed:
        first = failed[0]
        violation = InvariantViolationError(
            f"{first.case} {first.check}: {len(first.failures)} failing samples",
            _stringify({"case": first.case, "check": first.check, "seed": first.seed, **first.failures[0]}),
        )
    return CommandResult(payload, formatters.format_summaries(summaries), violation)


def cmd_horoball(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    if args.field:
        if args.against:
            raise UsageError("--against needs --case")
        ball = boundary_horoball(parse_element(args.z, BoundaryField.from_tag(args.field)))
        return CommandResult(ball.to_dict(config.digits), formatters.format_horoball(ball, config.digits))
    case = SpaceCase.from_tag(args.case)
    field = field_of_case(case)
    z = parse_element(args.z, field)
    sphere_ball = horoball_on_sphere(z, case)
    payload = sphere_ball.to_dict(config.digits)
    text = formatters.format_horoball(sphere_ball, config.digits)
    if args.against:
        other = parse_element(args.against, field)
        verdict = verify_tangent_or_disjoint(map_to_sphere(z, case), map_to_sphere(other, case))
        payload["against"] = verdict.to_dict()
        text += formatters.format_verdict(verdict)
    return CommandResult(payload, text)


def cmd_graph(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    case = SpaceCase.from_tag(args.case)
    if args.bound < 1:
        raise UsageError("--bound must be at least 1")
    graph = tangency_graph(case, args.bound, config.threads)
    payload = graph.to_dict()
    if args.certify:
        payload["certificate"] = certify_pairs(case, args.bound, config.threads, exact=True)
    if args.format == "pdf":
        if not getattr(args, "out", None):
            raise UsageError("--format pdf needs --out PATH")
        if case.sphere_dim != 1:
            raise RenderingUnsupportedError
        buffer = io.BytesIO()
        if not FigurePDFGenerator([graph]).generate_pdf(buffer):
            raise UsageError(f"could not render {case} as PDF")
        return CommandResult(payload, "", binary=buffer.getvalue())
    if getattr(args, "json", False) or args.format == "json":
        return CommandResult(payload, graph_to_json(graph))
    text = export_graph(graph, args.format).decode("utf-8")
    if args.certify and args.format == "dot":
        text += "".join(f"// {key}: {value}\n" for key, value in sorted(payload["certificate"].items()))
    return CommandResult(payload, text)


def cmd_markoff(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    if args.bound < 1:
        raise UsageError("--bound must be at least 1")
    equation = EQUATIONS[args.equation]
    triples = markoff_tree(args.bound, equation)
    violation = None
    if args.check:
        oracle = brute_force_markoff(args.bound, equation)
        if oracle != triples:
            missing = sorted(set(map(str, oracle)) ^ set(map(str, triples)))
            violation = InvariantViolationError(
                "tree search and exhaustive search disagree",
                {"equation": str(equation), "bound": str(args.bound), "difference": " ".join(missing)},
            )
    xs = sorted({t.x for t in triples})
    ys = sorted({y for t in triples for y in (t.y1, t.y2)})
    payload: dict[str, Any] = {"equation": str(equation), "bound": args.bound}
    if args.xs:
        payload["xs"] = xs
        text = formatters.format_values(xs)
    elif args.ys:
        payload["ys"] = ys
        text = formatters.format_values(ys)
    else:
        payload["triples"] = [t.to_dict() for t in triples]
        text = formatters.format_triples(triples)
    if args.check:
        payload["oracle_agrees"] = violation is None
    return CommandResult(payload, text, violation)


def cmd_spectrum(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    case = SpaceCase.from_tag(args.case)
    values = discrete_spectrum(case, args.bound)
    payload = {"case": case.value, "bound": args.bound, "values": [v.to_dict(config.digits) for v in values]}
    if args.csv:
        stream = io.StringIO()
        write_spectrum_csv(values, stream, config.digits)
        return CommandResult(payload, stream.getvalue())
    return CommandResult(payload, formatters.format_spectrum(values, config.digits))


def cmd_estimate_lagrange(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    target = TargetNumber.parse(args.target)
    space = _space(args.space)
    if args.bound < 2:
        raise UsageError("--bound must be at least 2")
    estimate = estimate_lagrange(target, space, args.bound, config.precision, config.max_precision, config.threads)
    payload = estimate.to_dict(config.digits)
    text = formatters.format_estimate(estimate, config.digits)
    if args.on_sphere:
        case = SpaceCase.from_tag(args.on_sphere)
        if space is not field_of_case(case):
            raise UsageError(f"{case} does not have boundary field {space}")
        with interval.precision(estimate.best.precision):
            scaled = sphere_lagrange_from_boundary(estimate.enclosure, case)
        payload["on_sphere"] = {"case": case.value, "estimate": interval.interval_str(scaled, config.digits)}
        text += f"on {case}: {interval.interval_str(scaled, config.digits)}\n"
    if args.records:
        records = improving_records(
            best_approximations(target, space, args.bound, config.precision, config.max_precision, config.threads)
        )
        payload["records"] = [record.to_dict(config.digits) for record in records]
        text += formatters.format_records(records)
    return CommandResult(payload, text)


def cmd_figures(args: argparse.Namespace, config: RunConfig) -> CommandResult:
    out = getattr(args, "out", None)
    if not out:
        raise UsageError("figures needs --out DIR")
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    cases: list[dict[str, Any]] = []
    pdf_graphs = []
    for case in SpaceCase:
        points = figure_points(case)
        for entry in points:
            mapped = map_to_sphere(entry.element, case)
            back = unmap(entry.point, allow_infinity=True)
            if mapped != entry.point or back != entry.element:
                raise InvariantViolationError(
                    "figure correspondence does not reproduce",
                    {"case": case.value, "z": str(entry.element), "expected": str(entry.point), "got": str(mapped)},
                )
        bound = args.bound or max(entry.point.q for entry in points)
        graph = tangency_graph(case, bound, config.threads)
        files = {"dot": f"{case.tag}.dot", "json": f"{case.tag}.json"}
        (directory / files["dot"]).write_text(graph_to_dot(graph), encoding="utf-8")
        (directory / files["json"]).write_text(graph_to_json(graph), encoding="utf-8")
        if case.sphere_dim == 1:
            files["svg"] = f"{case.tag}.svg"
            (directory / files["svg"]).write_text(graph_to_svg(graph), encoding="utf-8")
            pdf_graphs.append(graph)
        cases.append(
            {
                "case": case.value,
                "bound": bound,
                "nodes": len(graph.nodes),
                "edges": len(graph.edges),
                "points": [entry.to_dict() for entry in points],
                "files": files,
            }
        )
    if not FigurePDFGenerator(pdf_graphs).generate_pdf(str(directory / "figures.pdf")):
        logger.warning("figure PDF was not written")
    payload = {"directory": str(directory), "cases": cases}
    if not RunArchive.save_run("figures", config, payload, str(directory / "figures.json")):
        logger.warning("run archive was not written")
    text = "".join(
        f"{entry['case']}: {len(entry['points'])} points verified, bound {entry['bound']}, "
        f"{entry['nodes']} nodes, {entry['edges']} edges\n"
        for entry in cases
    )
    return CommandResult(payload, text)


COMMANDS = {
    "map": cmd_map,
    "unmap": cmd_unmap,
    "height": cmd_height,
    "verify-phi": cmd_verify_phi,
    "horoball": cmd_horoball,
    "graph": cmd_graph,
    "markoff": cmd_markoff,
    "spectrum": cmd_spectrum,
    "estimate-lagrange": cmd_estimate_lagrange,
    "figures": cmd_figures,
}


# ----------------------------------------------------------------------
# Entry points
# ----------------------------------------------------------------------


def _emit(result: CommandResult, args: argparse.Namespace) -> None:
    out = getattr(args, "out", None)
    if args.command == "figures":
        out = None
    if result.binary is not None:
        Path(out).write_bytes(result.binary)
        return
    text = formatters.render_json(result.payload) if getattr(args, "json", False) else result.text
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: list[str]) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name

    Returns:
        Exit status: 0 on success, 2 on usage errors, 3 on invariant violations
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = _effective_config(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(level=config.log_level, log_file_path=config.log_file)
    logger.debug("command %s with %s", args.command, config)

    try:
        result = COMMANDS[args.command](args, config)
        _emit(result, args)
    except UsageError as e:
        logger.debug("usage error in %s", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolationError as e:
        logger.error("%s: %s", args.command, e, exc_info=True)
        print(e.dump(), file=sys.stderr)
        return EXIT_VIOLATION
    except OSError as e:
        logger.error("cannot write output: %s", e, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if result.violation is not None:
        print(result.violation.dump(), file=sys.stderr)
        return EXIT_VIOLATION
    logger.info("%s finished", args.command)
    return EXIT_OK


def main(args: list[str] | None = None) -> int:
    """
    Main entry point for the application.

    Args:
        args: Command line arguments without the program name

    Returns:
        Exit code
    """
    if args is None:
        args = sys.argv[1:]
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
