# -*- coding: utf-8 -*-
# vim: set ft=python ts=4 sw=4 expandtab:

"""
Command line interface for ricci-rot.

Exit codes: 0 on success, 1 when validation fails, 2 for inadmissible parameters or a bad
configuration, and 3 for domain, numerical and format errors.
"""

import argparse
import itertools
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

import numpy as np
from attrs import evolve

from .classify import classify
from .converter import CONVERTER, load_config
from .export import export, read_profile_csv
from .freeboundary import family_sweep, free_boundary_mesh, gauss_bonnet_audit
from .geometry import build_mesh, sample_profile, sampling_window, truncated
from .interface import (
    BadParameters,
    Branch,
    ConfigError,
    DomainInterval,
    ExportFormat,
    InadmissibleError,
    JobConfig,
    OutsideDomain,
    ParamFamily,
    RicciError,
    RicciParams,
    ValidationReport,
)
from .oracle import random_params, validate_curve
from .params import omega_region, omega_scan
from .pool import map_ordered

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INADMISSIBLE = 2
EXIT_ERROR = 3


def _add_params(parser: argparse.ArgumentParser, d_default: Optional[float] = 0.0) -> None:
    parser.add_argument("--a", type=float, required=True, help="Coefficient of f in f f' = a f + b s + c")
    parser.add_argument("--b", type=float, required=True, help="Coefficient of s")
    parser.add_argument("--c", type=float, required=True, help="Constant term")
    parser.add_argument("--d", type=float, default=d_default, help="Integration constant")
    parser.add_argument("--branch", choices=[branch.value for branch in Branch], default=Branch.PLUS.value, help="Sign branch")
    parser.add_argument("--t0", type=float, default=None, help="Base point of the auxiliary parameter (a, b != 0)")


def _add_window(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--s-min", type=float, default=None, help="Lower end of the sampled window")
    parser.add_argument("--s-max", type=float, default=None, help="Upper end of the sampled window")
    parser.add_argument("--force", action="store_true", help="Allow a window beyond the classified interval")
    parser.add_argument("--n", type=int, default=None, help="Number of profile samples")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ricci-rot", description="Construct, classify, validate and mesh rotational Ricci surfaces")
    parser.add_argument("--config", default=None, help="YAML configuration file with camelCase keys")
    parser.add_argument("--json", action="store_true", help="Print machine-readable JSON")
    parser.add_argument("--verbose", action="store_true", help="Log debug output to stderr")
    parser.add_argument("--threads", type=int, default=None, help="Worker pool size")
    commands = parser.add_subparsers(dest="command", required=True)

    command = commands.add_parser("classify", help="Classify a parameter set")
    _add_params(command)

    command = commands.add_parser("profile", help="Sample a profile curve to CSV")
    _add_params(command)
    _add_window(command)
    command.add_argument("--out", default=None, help="Output CSV path, stdout if omitted")

    command = commands.add_parser("mesh", help="Mesh a surface to OBJ")
    _add_params(command)
    _add_window(command)
    command.add_argument("--n-theta", type=int, default=None, help="Number of angular samples")
    command.add_argument("--out", default=None, help="Output OBJ path, stdout if omitted")

    command = commands.add_parser("freeboundary", help="Solve the free-boundary family in the unit ball")
    group = command.add_mutually_exclusive_group(required=True)
    group.add_argument("--b", type=float, help="Family parameter in (0, 1]")
    group.add_argument("--sweep", help="Comma separated family parameters in [0, 1]")
    command.add_argument("--audit", action="store_true", help="Include the Gauss-Bonnet audit")
    command.add_argument("--out", default=None, help="Write the sweep to this path, CSV if it ends in .csv, else JSON")
    command.add_argument("--mesh-out", default=None, help="Directory for one OBJ mesh per solved member")
    command.add_argument("--n", type=int, default=None, help="Number of profile samples per mesh")
    command.add_argument("--n-theta", type=int, default=None, help="Number of angular samples per mesh")

    command = commands.add_parser("validate", help="Validate a profile with independent checks")
    _add_params_optional(command)
    command.add_argument("--input", default=None, help="Profile CSV written by the profile command")
    command.add_argument("--random", type=int, default=None, help="Validate this many random parameter sets")
    command.add_argument("--seed", type=int, default=None, help="Seed for --random")
    command.add_argument("--n", type=int, default=None, help="Number of profile samples")

    command = commands.add_parser("omega", help="Scan the feasible region on a grid")
    _add_params(command)
    command.add_argument("--s-range", default="-10,10", help="Arc length range as lo,hi")
    command.add_argument("--x-range", default="0,10", help="Radius range as lo,hi")
    command.add_argument("--grid", type=int, default=101, help="Grid points per axis")
    command.add_argument("--out", default=None, help="Output CSV path, stdout if omitted")
    return parser


def _add_params_optional(parser: argparse.ArgumentParser) -> None:
    for name in ("a", "b", "c"):
        parser.add_argument("--%s" % name, type=float, default=None)
    parser.add_argument("--d", type=float, default=0.0)
    parser.add_argument("--branch", choices=[branch.value for branch in Branch], default=Branch.PLUS.value)
    parser.add_argument("--t0", type=float, default=None)


def _params(args: argparse.Namespace) -> RicciParams:
    if args.a is None or args.b is None or args.c is None:
        raise BadParameters("--a, --b and --c are required")
    return RicciParams(a=args.a, b=args.b, c=args.c, d=args.d, branch=Branch(args.branch), t0=args.t0)


def _config(args: argparse.Namespace) -> JobConfig:
    config = JobConfig()
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fp:
                config = load_config(fp.read())
        except OSError as e:
            raise ConfigError("Could not read %s: %s" % (args.config, e)) from e
    overrides: Dict[str, Any] = {}
    for name in ("threads", "n", "n_theta", "seed"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    try:
        return evolve(config, **overrides)
    except (TypeError, ValueError) as e:
        raise ConfigError("Invalid option: %s" % e) from e


def _window(args: argparse.Namespace, params: RicciParams, config: JobConfig) -> DomainInterval:
    """The classified interval, or a user window inside it (anywhere with --force)."""
    classified = classify(params).interval
    if args.s_min is None and args.s_max is None:
        return classified
    default_lo, default_hi = sampling_window(classified, config.solver, params)
    lo = args.s_min if args.s_min is not None else default_lo
    hi = args.s_max if args.s_max is not None else default_hi
    if not lo < hi:
        raise BadParameters("The window needs s-min < s-max, got [%s, %s]" % (lo, hi))
    inside = classified.contains(lo) and classified.contains(hi)
    if not inside and not args.force:
        raise OutsideDomain("Window [%s, %s] exceeds the classified interval (%s, %s); use --force to sample anyway" % (lo, hi, classified.lo, classified.hi))
    return truncated(lo, hi)


def _write(path: Optional[str], data: bytes) -> None:
    if path:
        with open(path, "wb") as fp:
            fp.write(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _print_json(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj, indent="  ") + "\n")


def cmd_classify(args: argparse.Namespace, _: JobConfig) -> int:
    """Print the classification report as JSON."""
    sys.stdout.write(export(classify(_params(args)), ExportFormat.JSON).decode("utf-8") + "\n")
    return EXIT_OK


def cmd_profile(args: argparse.Namespace, config: JobConfig) -> int:
    """Sample a profile and write it as CSV."""
    params = _params(args)
    curve = sample_profile(params, _window(args, params, config), config.n, config.solver, config.threads)
    _write(args.out, export(curve, ExportFormat.CSV))
    if args.out and args.json:
        _print_json({"path": args.out, "samples": len(curve), "sMin": curve.samples[0].s, "sMax": curve.samples[-1].s})
    return EXIT_OK


def cmd_mesh(args: argparse.Namespace, config: JobConfig) -> int:
    """Mesh a surface and write it as OBJ."""
    params = _params(args)
    curve = sample_profile(params, _window(args, params, config), config.n, config.solver, config.threads)
    mesh = build_mesh(curve, config.n_theta)
    _write(args.out, export(mesh, ExportFormat.OBJ))
    if args.out and args.json:
        _print_json({"path": args.out, "vertices": mesh.n_s * mesh.n_theta, "faces": (mesh.n_s - 1) * mesh.n_theta})
    return EXIT_OK


def _b_values(args: argparse.Namespace) -> List[float]:
    if args.sweep is None:
        return [args.b]
    try:
        return [float(value) for value in args.sweep.split(",") if value.strip()]
    except ValueError as e:
        raise BadParameters("Invalid sweep list %s: %s" % (args.sweep, e)) from e


def cmd_freeboundary(args: argparse.Namespace, config: JobConfig) -> int:
    """Solve the free-boundary family, with optional meshes and audits."""
    solutions = family_sweep(_b_values(args), config.threads)
    if args.mesh_out:
        os.makedirs(args.mesh_out, exist_ok=True)
        for solution in solutions:
            if not solution.degenerate:
                path = os.path.join(args.mesh_out, "free_boundary_b%s.obj" % repr(solution.b))
                _write(path, export(free_boundary_mesh(solution, config.n, config.n_theta), ExportFormat.OBJ))
    if args.out:
        fmt = ExportFormat.CSV if args.out.endswith(".csv") else ExportFormat.JSON
        _write(args.out, export(solutions, fmt))

    records = []
    for solution in solutions:
        record = CONVERTER.unstructure(solution)
        if args.audit and not solution.degenerate:
            audit = gauss_bonnet_audit(solution)
            record["audit"] = {"areaIntegral": audit.area_integral, "boundaryLength": audit.boundary_length, "defect": audit.defect}
        records.append(record)
    if args.json:
        _print_json(records)
    else:
        for solution, record in zip(solutions, records):
            if solution.degenerate:
                sys.stdout.write("b=%s geodesic marker, rho=1\n" % solution.b)
                continue
            line = "b=%s rho=%.12f neck_radius=%.12f residual=%.3g" % (solution.b, solution.rho, solution.neck_radius, solution.residual_boundary)
            if "audit" in record:
                line += " area_integral=%.12f boundary_length=%.12f" % (record["audit"]["areaIntegral"], record["audit"]["boundaryLength"])
            sys.stdout.write(line + "\n")
    return EXIT_OK


def _validate_params(params: RicciParams, config: JobConfig) -> ValidationReport:
    return validate_curve(sample_profile(params, None, config.n, config.solver), config.tolerances)


def cmd_validate(args: argparse.Namespace, config: JobConfig) -> int:
    """Validate a CSV profile, one parameter set, or a batch of random parameter sets."""
    if args.random is not None:
        rng = np.random.default_rng(config.seed)
        families = itertools.cycle(list(ParamFamily))
        drawn = [random_params(rng, next(families)) for _ in range(args.random)]
        reports = map_ordered(lambda params: _validate_params(params, config), drawn, config.threads)
        failed = [
            {"params": CONVERTER.unstructure(params), "failures": report.failures}
            for params, report in zip(drawn, reports)
            if not report.passed
        ]
        _print_json({"total": len(reports), "passed": len(reports) - len(failed), "failed": failed})
        return EXIT_OK if not failed else EXIT_VALIDATION

    params = _params(args)
    if args.input:
        try:
            with open(args.input, "r", encoding="utf-8", newline="") as fp:
                curve = read_profile_csv(fp.read(), params)
        except OSError as e:
            raise BadParameters("Could not read %s: %s" % (args.input, e)) from e
        report = validate_curve(curve, config.tolerances)
    else:
        report = _validate_params(params, config)
    sys.stdout.write(CONVERTER.to_json(report) + "\n")
    if not report.passed:
        sys.stderr.write("Validation failed: %s\n" % ", ".join(report.failures))
        return EXIT_VALIDATION
    return EXIT_OK


def _range(text: str) -> List[float]:
    try:
        lo, hi = (float(value) for value in text.split(","))
    except ValueError as e:
        raise BadParameters("Invalid range %s, expected lo,hi" % text) from e
    return [lo, hi]


def cmd_omega(args: argparse.Namespace, _: JobConfig) -> int:
    """Scan feasibility over a grid and write s,x,feasible rows as CSV."""
    params = _params(args)
    s_lo, s_hi = _range(args.s_range)
    x_lo, x_hi = _range(args.x_range)
    s_values = np.linspace(s_lo, s_hi, args.grid)
    x_values = np.linspace(x_lo, x_hi, args.grid)
    feasible = omega_scan(params, s_values, x_values)
    lines = ["s,x,feasible"]
    for i, x in enumerate(x_values):
        for j, s in enumerate(s_values):
            lines.append("%r,%r,%d" % (float(s), float(x), int(feasible[i, j])))
    _write(args.out, ("\r\n".join(lines) + "\r\n").encode("ascii"))
    if args.json:
        _print_json(CONVERTER.unstructure(omega_region(params)))
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "profile": cmd_profile,
    "mesh": cmd_mesh,
    "freeboundary": cmd_freeboundary,
    "validate": cmd_validate,
    "omega": cmd_omega,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line interface, returning the exit code."""
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        config = _config(args)
        return COMMANDS[args.command](args, config)
    except InadmissibleError as e:
        sys.stderr.write("%s\n" % e.message)
        return EXIT_INADMISSIBLE
    except ConfigError as e:
        sys.stderr.write("%s\n" % e.message)
        return EXIT_INADMISSIBLE
    except RicciError as e:
        logging.debug("Command %s failed", args.command, exc_info=True)
        sys.stderr.write("%s: %s\n" % (type(e).__name__, e.message))
        return EXIT_ERROR
