#!/usr/bin/env python
"""
Command-line frontend for the verification toolkit.

Subcommands:
    verify     run one case and write its report
    suite      run the smoke or full suite
    histogram  binned chord-length density, with the analytic ball overlay
    fit        measured Pleijel prefactor against its theoretical value
    cases      list the registered cases

Exit status is 0 iff every executed case passes, 2 on usage errors.
"""

import argparse
import asyncio
import csv
import logging
import os
import sys
from typing import List, Optional

from functionals.estimates import EstimatorOptions
from functionals.histograms import chord_length_histogram
from functionals.integrands import POINT_FUNCTION_KINDS
from functionals.lemmas import PLANE_WEIGHTS
from geometry.builtins import parse_body_spec
from geometry.errors import BodySpecError
from measures.rng import RngStream
from utils.base_case import CaseConfigError
from utils.case_factory import CaseFactory
from utils.config import settings
from utils.reports import OUTPUT_FORMATS, VerificationReport, write_reports
from utils.verification import (
    SUITE_NAMES,
    build_config,
    fit_constant,
    run_case,
    run_suite,
    run_suite_async,
)

__version__ = "1.0.0"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Get configured logger
logger = logging.getLogger("pleijel_verify.cli")


def print_banner(args: argparse.Namespace) -> None:
    """Print a banner with the run configuration."""
    banner = [
        "=" * 60,
        "              INTEGRAL GEOMETRY VERIFICATION              ",
        f"                       v{__version__}                       ",
        "=" * 60,
        f"Command:   {args.command}",
        f"Seed:      {args.seed}",
        f"Shards:    {args.shards}",
        f"Log Level: {args.log_level}",
        "=" * 60,
        "",
    ]
    print("\n".join(banner))


def _add_sampling_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=settings.SEED, help="Root random seed")
    parser.add_argument(
        "--shards", type=int, default=settings.SHARDS, help="Independent sample shards"
    )


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", choices=OUTPUT_FORMATS, default="json", help="Report format")
    parser.add_argument(
        "--out-path", default=None, help="Report file (default: under the output directory)"
    )
    parser.add_argument(
        "--timings", action="store_true", help="Include wall time in written reports"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Monte Carlo verification of integral-geometric identities",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--log-level",
        default=settings.LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Set the logging level",
    )
    parser.add_argument("--no-banner", action="store_true", help="Don't display the banner")
    subparsers = parser.add_subparsers(dest="command", required=True)
    formatter = argparse.ArgumentDefaultsHelpFormatter

    verify = subparsers.add_parser("verify", help="Run one case", formatter_class=formatter)
    verify.add_argument("--case", required=True, help="Case name or alias (see `cases`)")
    verify.add_argument("--body", default=None, help="Body spec or polytope file")
    verify.add_argument("--dim", type=int, default=None, help="Ambient dimension")
    verify.add_argument("--n-samples", type=int, default=None, help="Samples per estimator")
    verify.add_argument("--h-power", type=int, default=None, help="Test function t^m")
    verify.add_argument("--l", type=int, default=None, help="Flat dimension")
    verify.add_argument("--k", type=int, default=None, help="Number of boundary points")
    verify.add_argument("--moment", type=int, default=None, help="Distance moment order")
    verify.add_argument("--point-function", choices=POINT_FUNCTION_KINDS, default=None)
    verify.add_argument("--point-power", type=float, default=None)
    verify.add_argument("--plane-weight", choices=PLANE_WEIGHTS, default=None)
    verify.add_argument("--z-threshold", type=float, default=None, help="Pass threshold on |z|")
    verify.add_argument(
        "--prefactor-scale",
        type=float,
        default=None,
        help="Corrupt the Pleijel prefactor (thm1 only)",
    )
    _add_sampling_arguments(verify)
    _add_output_arguments(verify)

    suite = subparsers.add_parser("suite", help="Run a suite", formatter_class=formatter)
    suite.add_argument("--suite", choices=SUITE_NAMES, default="smoke", help="Suite name")
    suite.add_argument("--n-samples", type=int, default=None, help="Override the suite's N")
    suite.add_argument(
        "--prefactor-scale", type=float, default=None, help="Corrupt the thm1 prefactor"
    )
    suite.add_argument(
        "--parallel-cases", action="store_true", help="Run cases concurrently"
    )
    _add_sampling_arguments(suite)
    _add_output_arguments(suite)

    histogram = subparsers.add_parser(
        "histogram", help="Chord-length histogram as CSV", formatter_class=formatter
    )
    histogram.add_argument("--body", required=True, help="Body spec or polytope file")
    histogram.add_argument("--dim", type=int, default=None, help="Ambient dimension")
    histogram.add_argument("--bins", type=int, default=40, help="Number of bins")
    histogram.add_argument("--n-samples", type=int, default=settings.SMOKE_SAMPLES)
    histogram.add_argument("--out-path", default=None, help="CSV file (default: stdout)")
    _add_sampling_arguments(histogram)

    fit = subparsers.add_parser(
        "fit", help="Fit the Pleijel prefactor", formatter_class=formatter
    )
    fit.add_argument("--body", default="ball", help="Smooth body spec")
    fit.add_argument("--dim", type=int, default=3, help="Ambient dimension")
    fit.add_argument("--h-power", type=int, default=None, help="Test function t^m (default d)")
    fit.add_argument("--n-samples", type=int, default=settings.FULL_SAMPLES)
    _add_sampling_arguments(fit)

    subparsers.add_parser("cases", help="List registered cases", formatter_class=formatter)
    return parser


def _emit(reports: List[VerificationReport], args: argparse.Namespace, name: str) -> str:
    for report in reports:
        print(report.summary_line())
    path = args.out_path or os.path.join(settings.OUTPUT_DIR, f"{name}.{args.out}")
    return write_reports(reports, path, args.out, args.timings)


def cmd_verify(args: argparse.Namespace) -> int:
    config = build_config(
        args.case,
        body=args.body,
        dim=args.dim,
        n_samples=args.n_samples,
        seed=args.seed,
        shards=args.shards,
        h_power=args.h_power,
        l=args.l,
        k=args.k,
        moment=args.moment,
        point_function=args.point_function,
        point_power=args.point_power,
        plane_weight=args.plane_weight,
        z_threshold=args.z_threshold,
        prefactor_scale=args.prefactor_scale,
    )
    report = run_case(config)
    _emit([report], args, report.case)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_suite(args: argparse.Namespace) -> int:
    options = {
        "seed": args.seed,
        "shards": args.shards,
        "n_samples": args.n_samples,
        "prefactor_scale": args.prefactor_scale,
    }
    if args.parallel_cases:
        reports = asyncio.run(run_suite_async(args.suite, **options))
    else:
        reports = run_suite(args.suite, **options)
    _emit(reports, args, f"suite-{args.suite}")

    passed = sum(report.passed for report in reports)
    print(f"{passed}/{len(reports)} cases passed")
    return EXIT_OK if passed == len(reports) else EXIT_FAILED


def cmd_histogram(args: argparse.Namespace) -> int:
    if args.bins < 1:
        raise CaseConfigError(f"Need at least one bin, got {args.bins}")
    body = parse_body_spec(args.body, args.dim)
    options = EstimatorOptions(
        n_samples=args.n_samples,
        stream=RngStream(seed=args.seed),
        shards=args.shards,
        batch_size=settings.BATCH_SIZE,
        max_workers=settings.MAX_WORKERS,
    )
    histogram = chord_length_histogram(body, args.bins, options)

    if args.out_path:
        handle = open(args.out_path, "w", newline="", encoding="utf-8")
    else:
        handle = sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["lower", "upper", "density", "se", "overlay"])
        for lower, upper, density, error, overlay in histogram.rows():
            overlay_text = "" if overlay is None else repr(overlay)
            writer.writerow([repr(lower), repr(upper), repr(density), repr(error), overlay_text])
    finally:
        if handle is not sys.stdout:
            handle.close()

    total = histogram.total_measure()
    logger.info(
        f"Histogram of {body.body_name}: total measure {total.mean:.6g} ± "
        f"{total.standard_error:.2g}"
    )
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    config = build_config(
        "thm1",
        body=args.body,
        dim=args.dim,
        h_power=args.h_power if args.h_power is not None else args.dim,
        n_samples=args.n_samples,
        seed=args.seed,
        shards=args.shards,
    )
    result = fit_constant(config)
    print(f"measured:    {result.ratio.mean:.6g} ± {result.ratio.standard_error:.2g}")
    print(f"theoretical: {result.theoretical:.6g}  (z={result.z:+.2f})")
    if result.classical is not None:
        print(f"classical:   {result.classical:g}")
    return EXIT_OK


def cmd_cases(args: argparse.Namespace) -> int:
    for name, description in CaseFactory.get_available_cases().items():
        print(f"{name:16s} {description.splitlines()[0]}")
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "suite": cmd_suite,
    "histogram": cmd_histogram,
    "fit": cmd_fit,
    "cases": cmd_cases,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments and dispatch to the subcommand."""
    parser = build_parser()
    args = parser.parse_args(argv)

    os.environ["LOG_LEVEL"] = args.log_level
    logging.getLogger().setLevel(args.log_level)

    if not args.no_banner and args.command != "cases":
        print_banner(args)
    logger.info(f"Running '{args.command}' with seed {getattr(args, 'seed', None)}")

    try:
        return COMMANDS[args.command](args)
    except (CaseConfigError, BodySpecError) as e:
        logger.error(f"Usage error: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
