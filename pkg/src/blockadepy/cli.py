"""Command line interface for blockadepy."""

import argparse
import pathlib
from typing import Any, Optional

from blockadepy.core import config, exceptions, orchestrator
from blockadepy.processing import figures

logger = config.get_logger()

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config", type=pathlib.Path, default=None, help="Flat JSON config file."
    )
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override one configuration key; may be repeated.",
    )
    parser.add_argument("--out", type=str, default=None, help="Output path.")
    parser.add_argument("--workers", type=int, default=None, help="Worker count.")
    parser.add_argument(
        "--trunc-a", dest="na_dim", type=int, default=None, help="Mode a levels."
    )
    parser.add_argument(
        "--trunc-b", dest="nb_dim", type=int, default=None, help="Mode b levels."
    )


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subcommand per run type."""
    parser = argparse.ArgumentParser(
        prog="blockadepy",
        description="Steady-state photon blockade of an atom in two coupled "
        "cavities with a second-order nonlinearity.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    point = subparsers.add_parser("point", help="Solve one parameter point.")
    _add_common_arguments(point)

    figure = subparsers.add_parser("figure", help="Compute a figure preset.")
    figure.add_argument("preset", choices=figures.PRESET_NAMES)
    figure.add_argument(
        "--no-plot-script",
        dest="plot_script",
        action="store_false",
        help="Do not write the matplotlib script.",
    )
    _add_common_arguments(figure)

    sweep = subparsers.add_parser("sweep", help="Run a 1-D or 2-D sweep.")
    sweep.add_argument(
        "--axis",
        dest="axes",
        action="append",
        default=[],
        metavar="NAME:MIN:MAX:COUNT",
        help="Sweep axis; give once for a curve, twice for a map.",
    )
    sweep.add_argument(
        "--log-g2",
        dest="log_g2",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Plot g2(0) on a logarithmic scale.",
    )
    _add_common_arguments(sweep)

    validate = subparsers.add_parser("validate", help="Run the invariant suite.")
    _add_common_arguments(validate)

    evolve = subparsers.add_parser(
        "evolve", help="Integrate to the steady state and compare with the solver."
    )
    evolve.add_argument("--start", choices=("vacuum", "mixed"), default=None)
    _add_common_arguments(evolve)
    return parser


def _load(args: argparse.Namespace) -> orchestrator.RunConfig:
    flags: dict[str, Any] = {
        "out": args.out,
        "workers": args.workers,
        "na_dim": args.na_dim,
        "nb_dim": args.nb_dim,
    }
    if args.command == "sweep":
        if len(args.axes) > 2:
            raise exceptions.ConfigError("At most two --axis values are allowed.")
        flags["axis1"] = args.axes[0] if args.axes else None
        flags["axis2"] = args.axes[1] if len(args.axes) > 1 else None
        flags["log_g2"] = args.log_g2
    if args.command == "evolve":
        flags["start"] = args.start
    return orchestrator.load_config(args.config, args.overrides, **flags)


def _dispatch(args: argparse.Namespace) -> int:
    run_config = _load(args)
    if args.command == "point":
        print(orchestrator.run_point(run_config).format())
    elif args.command == "figure":
        paths = orchestrator.run_figure(
            args.preset,
            run_config,
            overrides=run_config.param_overrides(),
            plot_script=args.plot_script,
        )
        for path in paths:
            print(path)
    elif args.command == "sweep":
        rows, path = orchestrator.run_sweep(run_config)
        failed = sum(row.status == "solver_failed" for row in rows)
        print(f"{len(rows)} points written to {path} ({failed} failed)")
        if failed:
            return EXIT_FAILURE
    elif args.command == "validate":
        report = orchestrator.run_validation(run_config)
        print(report.format())
        if not report.passed:
            return EXIT_FAILURE
    else:
        print(orchestrator.run_evolve(run_config).format())
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    """Run the command line interface.

    Args:
        argv: Arguments without the program name, sys.argv if None.

    Returns:
        0 on success, 1 on solver or validation failure, 2 on configuration error.
    """
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (
        exceptions.ConfigError,
        exceptions.TruncationError,
        exceptions.DirectoryNotFoundError,
        exceptions.InvalidFileTypeError,
    ) as exc_info:
        print(f"Configuration error: {exc_info}")
        return EXIT_CONFIG
    except (exceptions.SolverError, exceptions.UndefinedCorrelationError) as exc_info:
        print(f"Solver failure: {exc_info}")
        return EXIT_FAILURE
