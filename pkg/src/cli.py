"""
Command-line entry point of the quaternionic curve toolkit.

Subcommands: sample | frenet | verify | compare. Exit codes: 0 success or
pass, 1 verification failed, 2 bad arguments, 3 I/O, 4 frame undefined,
5 incomparable curves.
"""

import argparse
import sys
from typing import List, Optional

from loguru import logger

from artifacts import OutputFormat
from executor import CommandExecutor, CurveSpec, Family, parse_curve_spec
from quatcurves.config import load_config
from quatcurves.errors import ParameterError
from quatcurves.families import Convention
from quatcurves.models import Criterion
from verifier import CurveVerifier


def _add_curve_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", type=str, choices=[f.value for f in Family], help="Curve family")
    parser.add_argument("--input", type=str, help="Curve file or family spec such as 'salkowski:m=1,rz=0.3'")
    parser.add_argument("--m", type=float, help="Salkowski shape parameter")
    parser.add_argument("--radius", type=float, default=1.0, help="Circle or helix radius")
    parser.add_argument("--pitch", type=float, default=1.0, help="Helix pitch b in (a cos t, a sin t, b t)")
    parser.add_argument(
        "--convention",
        type=str,
        choices=[c.value for c in Convention],
        default=Convention.INTRINSIC.value,
        help="Sign convention of the Salkowski families",
    )
    parser.add_argument("--t0", type=float, help="Start of the parameter range (default: domain start)")
    parser.add_argument("--t1", type=float, help="End of the parameter range (default: domain end)")
    parser.add_argument("--n", type=int, help="Number of grid points (default: grid_size from the config)")
    parser.add_argument("--fd-step", type=float, help="Absolute finite-difference step")
    parser.add_argument("--margin", type=float, help="Safe-domain margin as a fraction of pi/(2n)")
    parser.add_argument("--out", type=str, help="Output file (default: stdout)")
    parser.add_argument(
        "--format", type=str, choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value, help="Output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quatcurves", description="Quaternionic curve toolkit.")
    parser.add_argument("--config", type=str, help="YAML file overriding the default configuration")
    parser.add_argument(
        "--log-level",
        type=str,
        default="WARNING",
        choices=["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"],
        help="Level of the stderr log sink",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sample = commands.add_parser("sample", help="Sample a curve as rows of t, s, x, y, z")
    _add_curve_flags(sample)

    frenet = commands.add_parser("frenet", help="Frenet frame table of a curve")
    _add_curve_flags(frenet)

    verify = commands.add_parser("verify", help="Run a named verification check")
    verify.add_argument("check", nargs="?", choices=CurveVerifier().names, help="Check name")
    verify.add_argument("--scenario", type=str, help="TOML scenario listing checks to run")
    verify.add_argument("--m", type=float, nargs="+", help="Shape parameters to check")
    verify.add_argument("--n", type=int, help="Grid size")
    verify.add_argument("--tol", type=float, help="Verdict tolerance")
    verify.add_argument("--margin", type=float, help="Safe-domain margin as a fraction of pi/(2n)")
    verify.add_argument("--json", action="store_true", help="Print the report as JSON")
    verify.add_argument("--out", type=str, help="Output file (default: stdout)")

    compare = commands.add_parser("compare", help="Decide whether two curves are similar")
    compare.add_argument("--a", type=str, required=True, help="First curve: file or family spec")
    compare.add_argument("--b", type=str, required=True, help="Second curve: file or family spec")
    compare.add_argument(
        "--criterion", type=str, choices=[c.value for c in Criterion], default=Criterion.RATIO.value, help="Similarity criterion"
    )
    compare.add_argument("--antipodal", action="store_true", help="Also accept the antipodal image")
    compare.add_argument("--n", type=int, help="Grid size per curve")
    compare.add_argument("--tol", type=float, help="Verdict tolerance")
    compare.add_argument("--fd-step", type=float, help="Absolute finite-difference step")
    compare.add_argument("--margin", type=float, help="Safe-domain margin as a fraction of pi/(2n)")
    compare.add_argument("--json", action="store_true", help="Print the report as JSON")
    compare.add_argument("--out", type=str, help="Output file (default: stdout)")
    return parser


def configure_logging(level: str) -> None:
    """Route all log output to stderr so stdout carries only artifacts."""
    logger.remove()
    logger.add(sys.stderr, level=level)


def curve_spec_from_args(args: argparse.Namespace) -> CurveSpec:
    if args.input and args.family not in (None, Family.FILE.value):
        raise ParameterError("give either --family or --input, not both")
    if args.input:
        return parse_curve_spec(args.input)
    if args.family is None:
        raise ParameterError("a curve needs --family or --input")
    if args.family == Family.FILE.value:
        raise ParameterError("--family file needs --input with the file path")
    return CurveSpec(
        family=Family(args.family),
        m=args.m,
        radius=args.radius,
        pitch=args.pitch,
        convention=Convention(args.convention),
    )


def run(executor: CommandExecutor, args: argparse.Namespace) -> int:
    """Resolve the configuration and dispatch the subcommand."""
    config = load_config(args.config).merged(
        tol=getattr(args, "tol", None),
        margin=getattr(args, "margin", None),
        grid_size=args.n if args.command == "compare" else None,
    )
    executor.configure(config)

    if args.command in ("sample", "frenet"):
        spec = curve_spec_from_args(args)
        command = executor.sample if args.command == "sample" else executor.frenet
        return command(spec, args.t0, args.t1, args.n, args.out, OutputFormat(args.format), args.fd_step)

    if args.command == "verify":
        if args.scenario:
            return executor.verify_scenario(args.scenario, args.json, args.out)
        if args.check is None:
            raise ParameterError("verify needs a check name or --scenario")
        params = {}
        if args.m:
            params["m"] = args.m
        if args.n:
            params["samples" if args.check == "quaternion-algebra" else "grid_size"] = args.n
        return executor.verify([args.check], params, args.json, args.out)

    return executor.compare(
        parse_curve_spec(args.a),
        parse_curve_spec(args.b),
        Criterion(args.criterion),
        args.antipodal,
        args.json,
        args.out,
        args.fd_step,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(args.log_level)
    executor = CommandExecutor()
    return executor.execute(lambda: run(executor, args))


if __name__ == "__main__":
    sys.exit(main())
