# main.py
import argparse
import logging
import sys
from typing import List, Optional, Sequence

from algebra.errors import ConfigurationError
from derivative.cases import CASES, list_functions, list_slopes
from graph.suite_graph import SuiteGraph, run_suite
from groups.registry import NOT_DIVISIBLE, list_groups
from suites.registry import SUITE_CLASSES, build_suites, list_suites
from utils.report_utils import format_explanation, pretty_print_report, write_report
from utils.settings import SuiteConfig, load_config, log_level_from_environment, parse_tolerance_flags

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_CONFIGURATION = 2

logger = logging.getLogger(__name__)


def _config_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--suite", dest="suite_flag", default=None, help="Suite to run (see `list`).")
    flags.add_argument("--seed", type=int, default=None, help="Root seed (unsigned 64-bit).")
    flags.add_argument("--samples", type=int, default=None, help="Samples per axiom check.")
    flags.add_argument("--out", default=None, help="Write the JSON report here instead of stdout.")
    flags.add_argument("--config", default=None, help="Config file: JSON, or KEY=VALUE lines.")
    flags.add_argument(
        "--tolerance", action="append", default=[], metavar="NAME=VALUE",
        help="Override one tolerance (fp, hom, fact, fact_rel, root, limit, root_limit). Repeatable.",
    )
    flags.add_argument("--group", action="append", default=None, help="Restrict to this group. Repeatable.")
    flags.add_argument("--workers", type=int, default=None, help="Threads used to run checks.")
    flags.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default) or ERROR.")
    return flags


def _parse_args(argv: Optional[Sequence[str]]) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Verify Carathéodory derivatives on metric divisible groups and emit a JSON report.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[_config_flags()], help="Run a verification suite.")
    run.add_argument("suite", nargs="?", default=None, help=f"One of: {', '.join(list_suites())}.")
    run.add_argument("--failures-only", action="store_true", help="Only list failing checks in the summary.")

    sub.add_parser("list", help="List groups, functions, slopes and suites.")

    explain = sub.add_parser("explain", parents=[_config_flags()], help="Show the anchor and tolerances of a check.")
    explain.add_argument("check_id", help="e.g. 02-group-metric/real-add/product-bound")
    return parser.parse_args(argv)


def _load(args: argparse.Namespace, suite: Optional[str]) -> SuiteConfig:
    overrides = {
        "suite": suite,
        "seed": args.seed,
        "samples": args.samples,
        "out": args.out,
        "groups": args.group,
        "workers": args.workers,
    }
    return load_config(args.config, overrides, parse_tolerance_flags(args.tolerance))


def list_registry() -> str:
    lines: List[str] = ["groups:"]
    for name in list_groups():
        note = f"  ({NOT_DIVISIBLE[name]})" if name in NOT_DIVISIBLE else ""
        lines.append(f"  {name}{note}")
    lines.append("functions:")
    lines.extend(f"  {name}  ({CASES[name].description})" for name in list_functions())
    lines.append("slopes:")
    lines.extend(f"  {name}" for name in list_slopes())
    lines.append("suites:")
    for name in list_suites():
        suite_class = SUITE_CLASSES.get(name)
        lines.append(f"  {name}" if suite_class is None else f"  {name}  ({suite_class(SuiteConfig()).description})")
    return "\n".join(lines)


def _run(args: argparse.Namespace) -> int:
    config = _load(args, args.suite_flag or args.suite)
    logger.info(f"running suite '{config.suite}' with seed {config.seed}")
    report = run_suite(config)
    write_report(report, config.out)
    pretty_print_report(report, failures_only=args.failures_only)
    if not report.passed:
        print(f"{report.comparison.failures} check(s) failed", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_PASS


def _explain(args: argparse.Namespace) -> int:
    config = _load(args, args.suite_flag or "all")
    graph = SuiteGraph(build_suites(config), workers=config.workers).build_graph()
    print(format_explanation(graph.explain(args.check_id), config.tolerances))
    return EXIT_PASS


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    level = (getattr(args, "log_level", None) or log_level_from_environment()).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s [%(levelname)s] %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "list":
            print(list_registry())
            return EXIT_PASS
        if args.command == "explain":
            return _explain(args)
        return _run(args)
    except ConfigurationError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIGURATION


if __name__ == "__main__":
    raise SystemExit(main())
