import argparse
import logging
import sys
from pathlib import Path

from errors import ScenarioSemanticError, ScenarioSyntaxError
from frontend import DEMOS, demo_source, format_report, parse, run, run_selftest
from observability.logging_config import setup_logging

logger = logging.getLogger("app")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sector-toolkit",
        description="Verify GNS, sector and Born-rule properties of finite-dimensional scenarios.",
    )
    parser.add_argument("--json", action="store_true", help="print the machine (JSON) report")
    parser.add_argument("--tol", type=float, default=None, help="equivalence / Born tolerance")
    parser.add_argument("--seed", type=int, default=None, help="seed for random_* builtins")
    parser.add_argument("--workers", type=int, default=None, help="queries evaluated concurrently")
    parser.add_argument("--timings", action="store_true", help="include wall-clock per query")
    parser.add_argument("--log-level", default=None, help="override SECTOR_TOOLKIT_LOG_LEVEL")

    sub = parser.add_subparsers(dest="command", required=True)
    run_cmd = sub.add_parser("run", help="parse, check and execute a scenario file")
    run_cmd.add_argument("file", type=Path)
    check_cmd = sub.add_parser("check", help="parse and check a scenario file without running it")
    check_cmd.add_argument("file", type=Path)
    demo_cmd = sub.add_parser("demo", help="run a built-in scenario")
    demo_cmd.add_argument("name", choices=sorted(DEMOS))
    sub.add_parser("selftest", help="run the in-process property suite")
    return parser


def _load(args) -> str:
    if args.command == "demo":
        return demo_source(args.name)
    return args.file.read_text(encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    mode = "machine" if args.json else "human"

    if args.command == "selftest":
        report = run_selftest(seed=args.seed, timings=args.timings)
        sys.stdout.write(format_report(report, mode))
        return report.exit_code

    try:
        scenario = parse(_load(args))
    except (ScenarioSyntaxError, ScenarioSemanticError) as e:
        logger.error("scenario rejected: %s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID

    if args.command == "check":
        sys.stdout.write(
            f"ok: {scenario.name or '(unnamed)'}: {len(scenario.declarations)} declarations, "
            f"{len(scenario.queries)} queries\n"
        )
        return EXIT_OK

    report = run(scenario, tol=args.tol, seed=args.seed, workers=args.workers, timings=args.timings)
    sys.stdout.write(format_report(report, mode))
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
