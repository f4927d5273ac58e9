"""
Command line front end.

    fractal-helper generate koch --depth 4 --format svg --out koch.svg
    fractal-helper verify --suite all --config run.cfg
    fractal-helper fit-slope samples.csv

Exit codes: 0 success, 1 failed checks (report still written), 2 usage, config
or input errors, 3 I/O errors.
"""

import argparse
import json
import logging
import math
import os
import sys
from typing import List, Optional

import numpy as np
import pandas as pd

from .Golden import GOLDEN, Golden
from .Helper import ENV_LOG_LEVEL, RunConfig
from .SelfSim import SelfSim
from .Spiral import Handedness, Spiral, SpiralParams
from .Verify import SUITES, Verify
from .errors import FractalHelperError, InvalidSampleError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

SELF_SIMILAR_R_SQUARED = 0.99
GENERATE_KINDS = ("koch", "logspiral", "goldenspiral", "fibspiral")


def _common_options(default) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=default, help="Logging level (default from FRACTAL_HELPER_LOG_LEVEL, else WARNING)")
    common.add_argument("--config", default=default, help="key=value run configuration file")
    return common


def build_parser() -> argparse.ArgumentParser:
    # Accepted before or after the subcommand
    parser = argparse.ArgumentParser(
        prog="fractal-helper",
        description="Fractal geometry and verification toolkit",
        parents=[_common_options(None)],
    )
    common = _common_options(argparse.SUPPRESS)
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", parents=[common], help="Write fractal or spiral geometry as CSV or SVG")
    generate.add_argument("kind", choices=GENERATE_KINDS)
    generate.add_argument("--format", choices=("csv", "svg"), default="csv")
    generate.add_argument("--out", default=None, help="Output file (default <output_dir>/<kind>.<format>)")
    generate.add_argument("--depth", type=int, default=4, help="Koch depth")
    generate.add_argument("--d", type=float, default=0.1, help="Spiral slope")
    generate.add_argument("--r0", type=float, default=1.0, help="Spiral radius at theta = 0")
    generate.add_argument("--theta-max", type=float, default=4 * math.pi, help="Last spiral angle")
    generate.add_argument("--turns", type=float, default=None, help="Full turns, overrides --theta-max")
    generate.add_argument("--samples", type=int, default=400, help="Spiral samples")
    generate.add_argument("--handedness", choices=[h.value for h in Handedness], default="direct")
    generate.add_argument("--arcs", type=int, default=8, help="Fibonacci spiral arcs")
    generate.add_argument("--unit", type=float, default=1.0, help="Fibonacci spiral unit square")
    generate.add_argument("--polar", action="store_true", help="Write theta,r columns instead of x,y (spirals only)")

    verify = commands.add_parser("verify", parents=[common], help="Run verification suites and write a JSON report")
    verify.add_argument("--suite", choices=("all",) + SUITES, default="all")
    verify.add_argument("--out", default=None, help="Report file (default report_path, else stdout)")

    fit = commands.add_parser("fit-slope", parents=[common], help="Fit ln r = d theta + ln r0 to a theta,r CSV")
    fit.add_argument("input", help="CSV with header theta,r")
    fit.add_argument("--out", default=None, help="Write the JSON result here instead of stdout")

    return parser


def _configure_logging(level: Optional[str]) -> None:
    level = (level or os.getenv(ENV_LOG_LEVEL) or "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)
    logging.getLogger().setLevel(getattr(logging, level, logging.WARNING))


def _emit(payload: dict, out: Optional[str], helper) -> None:
    if out:
        helper._write_json(payload, out)
    else:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_generate(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Generates geometry and writes it.

    Returns:
        int: Exit code.
    """
    out = args.out or f"{args.kind}.{args.format}"
    theta_max = 2 * math.pi * args.turns if args.turns is not None else args.theta_max

    if args.kind == "koch":
        helper = SelfSim(config)
        curve = helper.koch_iterate(args.depth)
    elif args.kind == "fibspiral":
        helper = Golden(config)
        curve = helper.fibonacci_spiral(args.arcs, args.unit)
    else:
        helper = Spiral(config)
        d = GOLDEN.d_g if args.kind == "goldenspiral" else args.d
        params = SpiralParams(args.r0, d, args.handedness)
        curve = helper.spiral_polyline(params, theta_max, args.samples)

        if args.polar:
            if args.format != "csv":
                msg = "--polar output is only available as csv"
                logging.error(msg)
                raise InvalidSampleError(msg)
            theta = np.linspace(0.0, theta_max, args.samples)
            target = helper._write_csv(pd.DataFrame({"theta": theta, "r": params.radius(theta)}), out)
            logging.info(f"Generated {args.kind} in polar form at {target}")
            return EXIT_OK

    target = helper.export_polyline(curve, out, args.format)
    logging.info(f"Generated {args.kind} with {len(curve)} points at {target}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Runs a suite and emits its report.

    Returns:
        int: 0 when every check passed, 1 otherwise.
    """
    verifier = Verify(config)
    report = verifier.run(args.suite)
    _emit(report.to_dict(), args.out or config.report_path or None, verifier)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def read_samples(path: str) -> np.ndarray:
    """
    Reads a theta,r CSV.

    Args:
        path (str): CSV file with header theta,r.

    Returns:
        np.ndarray: (N, 2) samples.

    Raises:
        InvalidSampleError: On a wrong header, non-numeric or nonpositive values, naming the file line.
    """
    try:
        frame = pd.read_csv(path, dtype=str, skipinitialspace=True, skip_blank_lines=False)
    except pd.errors.ParserError as exc:
        msg = f"{path}: malformed CSV ({exc})"
        logging.error(msg)
        raise InvalidSampleError(msg)
    except pd.errors.EmptyDataError:
        msg = f"{path}: empty file"
        logging.error(msg)
        raise InvalidSampleError(msg)

    if [column.strip() for column in frame.columns] != ["theta", "r"]:
        msg = f"{path}: line 1: expected header theta,r, got {','.join(frame.columns)}"
        logging.error(msg)
        raise InvalidSampleError(msg)
    frame.columns = ["theta", "r"]

    values = frame.apply(pd.to_numeric, errors="coerce")
    for index, row in values.iterrows():
        # Header is line 1
        line = index + 2
        if row.isna().any() or not np.isfinite(row.to_numpy(dtype=float)).all():
            msg = f"{path}: line {line}: malformed row {frame.loc[index].tolist()}"
            logging.error(msg)
            raise InvalidSampleError(msg)
        if row["r"] <= 0:
            msg = f"{path}: line {line}: radius must be positive, got {row['r']}"
            logging.error(msg)
            raise InvalidSampleError(msg)

    return values.to_numpy(dtype=float)


def cmd_fit_slope(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Fits the log-log slope of external data.

    Returns:
        int: Exit code.
    """
    helper = Spiral(config)
    fit = helper.fit_loglog_slope(read_samples(args.input))

    if fit.degenerate:
        note = "degenerate: constant radius, slope 0 with a perfect fit"
    elif fit.r_squared < SELF_SIMILAR_R_SQUARED:
        note = "not self-similar at tolerance"
    else:
        note = "straight line in (theta, ln r): logarithmic spiral with slope d"

    _emit(
        {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
            "degenerate": fit.degenerate,
            "self_similar": fit.degenerate or fit.r_squared >= SELF_SIMILAR_R_SQUARED,
            "inferred_dimension_note": note,
        },
        args.out,
        helper,
    )
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "verify": cmd_verify, "fit-slope": cmd_fit_slope}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point.

    Args:
        argv (Optional[List[str]]): Arguments, defaults to sys.argv[1:].

    Returns:
        int: Exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    _configure_logging(args.log_level)

    try:
        config = RunConfig.load(args.config)
        return COMMANDS[args.command](args, config)
    except FractalHelperError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        logging.error(f"I/O error: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
