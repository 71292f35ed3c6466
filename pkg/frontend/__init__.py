from frontend.demos import DEMOS, corpus, demo_path, demo_source
from frontend.printer import format_scenario
from frontend.report import Check, QueryResult, Report, format_report, report_to_dict
from frontend.runner import ScenarioRunner, run
from frontend.selftest import run_selftest
from frontend.semantics import check, parse
from frontend.syntax import Scenario

__all__ = [
    "DEMOS",
    "Check",
    "QueryResult",
    "Report",
    "Scenario",
    "ScenarioRunner",
    "check",
    "corpus",
    "demo_path",
    "demo_source",
    "format_report",
    "format_scenario",
    "parse",
    "report_to_dict",
    "run",
    "run_selftest",
]
