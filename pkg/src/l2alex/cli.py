"""
Command-line surface: `l2alex <command> ...`.

Reports go to stdout (or --out) as JSON; logs go to stderr.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, List, Optional

import numpy as np
from pydantic import BaseModel, ValidationError

from .models.config import CliConfig
from .models.inputs import EndoInput, PDInput, PresentationInput
from .services.fox import FreeGroupEndo, Presentation, torus_presentation
from .services.laurent import parse_poly
from .services.mahler import mahler
from .services.pipeline import (
    alexander_norm_from_poly,
    alexander_norm_report,
    alexander_polynomial,
    basiccase_check,
    tau_fibered,
    tau_graph_manifold,
    tau_knot_abelianization,
    tau_torus_knot,
    torsion_report,
    unknot_necessary_test,
)
from .services.torsionfn import equivalent, sample
from .utils.errors import L2AlexError
from .utils.parsing import load_int_matrix, load_model, parse_direction

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("numerical settings (override L2ALEX_* environment variables)")
    group.add_argument("--quad-points", type=int, help="Quadrature points per dimension (power of two)")
    group.add_argument("--root-tol", type=float, help="Root modulus tolerance")
    group.add_argument("--kmax", type=int, help="Largest power for growth-rate bounds")
    group.add_argument("--tmin", type=float, help="Smallest t of the sample grid")
    group.add_argument("--tmax", type=float, help="Largest t of the sample grid")
    group.add_argument("--n-samples", dest="n_samples", type=int, help="Number of sample points")
    group.add_argument("--quad-workers", type=int, help="Threads for quadrature")
    group.add_argument("--max-terms", type=int, help="Term cap for exact group-ring powers")
    parser.add_argument("--out", help="Write the report to this file instead of stdout")
    parser.add_argument("--json", action="store_true", help="Compact single-line JSON output")


def _add_knot_input(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--pd", help="PD code JSON file")
    source.add_argument("--presentation", help="Presentation JSON file with phi")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l2alex",
        description="L2-Alexander torsion of knots and 3-manifold groups for abelian coefficients",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    knot = sub.add_parser("knot", help="Torsion of a knot from a PD code or presentation")
    _add_knot_input(knot)
    knot.add_argument("--samples", help="Also write t,value,err samples to this CSV file")
    _add_config_flags(knot)

    torus = sub.add_parser("torus", help="Torsion of the (p, q) torus knot")
    torus.add_argument("p", type=int)
    torus.add_argument("q", type=int)
    _add_config_flags(torus)

    graph = sub.add_parser("graph", help="Torsion of a graph manifold with Thurston norm x")
    graph.add_argument("x", type=Fraction)
    _add_config_flags(graph)

    fibered = sub.add_parser("fibered", help="Certificate for a fibered class from its monodromy")
    fibered.add_argument("--endo", required=True, help="Endomorphism JSON file")
    fibered.add_argument("--chi", required=True, type=int, help="Euler characteristic of the fiber")
    _add_config_flags(fibered)

    mahler_cmd = sub.add_parser("mahler", help="Mahler measure of a Laurent polynomial")
    mahler_cmd.add_argument("--poly", required=True, help='Polynomial text such as "1 - 3*z"')
    _add_config_flags(mahler_cmd)

    norm = sub.add_parser("norm", help="Alexander-norm degrees over directions")
    norm_source = norm.add_mutually_exclusive_group(required=True)
    norm_source.add_argument("--file", help="Presentation JSON file")
    norm_source.add_argument("--poly", help="Determinant given directly as polynomial text")
    norm.add_argument("--dir", action="append", required=True, dest="directions",
                      help="Direction as comma-separated integers; repeatable")
    _add_config_flags(norm)

    basic = sub.add_parser("basiccase", help="Check det(P - t z Q) against 1 and t^n")
    basic.add_argument("--p", required=True, dest="p_file", help="Integer matrix JSON file")
    basic.add_argument("--q", required=True, dest="q_file", help="Integer matrix JSON file")
    _add_config_flags(basic)

    sampler = sub.add_parser("sample", help="CSV samples of a knot torsion")
    _add_knot_input(sampler)
    _add_config_flags(sampler)
    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig.from_env(
        quad_points=args.quad_points,
        root_tol=args.root_tol,
        kmax=args.kmax,
        tmin=args.tmin,
        tmax=args.tmax,
        samples=args.n_samples,
        quad_workers=args.quad_workers,
        max_terms=args.max_terms,
    )


def _knot(args: argparse.Namespace):
    if args.pd:
        return load_model(args.pd, PDInput)
    return Presentation.from_input(load_model(args.presentation, PresentationInput))


def cmd_knot(args: argparse.Namespace, config: CliConfig) -> BaseModel:
    knot = _knot(args)
    torsion = tau_knot_abelianization(knot, config)
    if args.samples:
        sampled = sample(torsion, config.tmin, config.tmax, config.samples)
        sampled.to_csv(args.samples)
        logger.info(f"Wrote {len(sampled)} samples to {args.samples}")
    return torsion_report(
        torsion,
        coefficient_system="abelianization (phi_K)",
        alexander=alexander_polynomial(knot),
        verdict=unknot_necessary_test(knot, config),
    )


def cmd_torus(args: argparse.Namespace, config: CliConfig) -> BaseModel:
    closed = tau_torus_knot(args.p, args.q)
    computed = tau_knot_abelianization(torus_presentation(args.p, args.q), config)
    return torsion_report(
        closed,
        coefficient_system="abelianization (phi_K)",
        alexander=alexander_polynomial(torus_presentation(args.p, args.q)),
        certificates={"fox_pipeline": computed.display(), "agrees": equivalent(closed, computed)},
    )


def cmd_graph(args: argparse.Namespace, config: CliConfig) -> BaseModel:
    return torsion_report(tau_graph_manifold(args.x), coefficient_system="any admissible gamma")


def cmd_fibered(args: argparse.Namespace, config: CliConfig) -> BaseModel:
    endo = FreeGroupEndo.from_input(load_model(args.endo, EndoInput))
    return tau_fibered(endo, args.chi, config.kmax, config)


def cmd_mahler(args: argparse.Namespace, config: CliConfig) -> BaseModel:
    poly, _ = parse_poly(args.poly)
    return mahler(poly, config.quad_points, config.root_tol, config.quad_workers)


def cmd_norm(args: argparse.Namespace, config: CliConfig) -> BaseModel:
    directions = [parse_direction(d) for d in args.directions]
    if args.poly:
        poly, _ = parse_poly(args.poly)
        return alexander_norm_from_poly(poly, directions)
    presentation = Presentation.from_input(load_model(args.file, PresentationInput))
    return alexander_norm_report(presentation, directions)


def cmd_basiccase(args: argparse.Namespace, config: CliConfig) -> BaseModel:
    grid = np.geomspace(config.tmin, config.tmax, config.samples)
    return basiccase_check(load_int_matrix(args.p_file), load_int_matrix(args.q_file),
                           [float(t) for t in grid], config.kmax, config)


def cmd_sample(args: argparse.Namespace, config: CliConfig) -> str:
    torsion = tau_knot_abelianization(_knot(args), config)
    return sample(torsion, config.tmin, config.tmax, config.samples).to_csv()


COMMANDS = {
    "knot": cmd_knot,
    "torus": cmd_torus,
    "graph": cmd_graph,
    "fibered": cmd_fibered,
    "mahler": cmd_mahler,
    "norm": cmd_norm,
    "basiccase": cmd_basiccase,
    "sample": cmd_sample,
}


def _emit(result: Any, args: argparse.Namespace) -> None:
    if isinstance(result, BaseModel):
        text = result.model_dump_json(indent=None if args.json else 2)
    elif isinstance(result, str):
        text = result.rstrip("\n")
    else:
        text = json.dumps(result, indent=None if args.json else 2)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text + "\n")
        logger.info(f"Report written to {args.out}")
    else:
        sys.stdout.write(text + "\n")


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        result = COMMANDS[args.command](args, config)
        _emit(result, args)
    except L2AlexError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except (ValidationError, ValueError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT
    except Exception as e:
        logger.error(f"Command {args.command} failed with error: {str(e)}")
        return EXIT_FAILURE
    return EXIT_OK
