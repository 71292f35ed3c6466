"""Verification reports and their human / machine renderings."""
import json
import math
from dataclasses import dataclass, field

import toolkit_config


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float
    expect_within: bool = True

    @property
    def passed(self) -> bool:
        return (self.residual <= self.tol) == self.expect_within


@dataclass
class QueryResult:
    index: int
    kind: str
    line: int = 0
    status: str = "pass"  # pass | fail | error
    values: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    tables: dict[str, list[dict]] = field(default_factory=dict)
    error: str | None = None
    elapsed: float | None = None

    def settle(self) -> "QueryResult":
        """Derive the status from the checks unless an error was recorded."""
        if self.error is None:
            self.status = "pass" if all(c.passed for c in self.checks) else "fail"
        return self


@dataclass
class Report:
    scenario: str
    seed: int
    tol: float
    rank_tol: float
    results: list[QueryResult] = field(default_factory=list)
    version: str = toolkit_config.TOOLKIT_VERSION
    schema: int = toolkit_config.REPORT_SCHEMA
    timings: bool = False

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def counts(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "error": 0}
        for r in self.results:
            counts[r.status] += 1
        return counts


def _encode(obj) -> str:
    """JSON text with floats at 17 significant digits and keys in insertion order."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        text = "%.17g" % obj
        return text if any(c in text for c in ".en") else text + ".0"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if hasattr(obj, "item"):
        return _encode(obj.item())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def report_to_dict(report: Report) -> dict:
    results = []
    for r in report.results:
        entry = {
            "index": r.index,
            "kind": r.kind,
            "line": r.line,
            "status": r.status,
            "values": r.values,
            "checks": [
                {"name": c.name, "residual": float(c.residual), "tol": float(c.tol),
                 "expect_within": c.expect_within, "passed": c.passed}
                for c in r.checks
            ],
            "tables": r.tables,
            "error": r.error,
        }
        if report.timings:
            entry["elapsed_sec"] = r.elapsed
        results.append(entry)
    return {
        "schema": report.schema,
        "toolkit_version": report.version,
        "scenario": report.scenario,
        "seed": report.seed,
        "tolerances": {"tol": report.tol, "rank_tol": report.rank_tol},
        "summary": report.counts(),
        "results": results,
    }


def _cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return "{" + ", ".join(_cell(v) for v in value) + "}"
    return str(value)


def _table(rows: list[dict], indent: str = "    ") -> list[str]:
    if not rows:
        return [indent + "(empty)"]
    headers = list(rows[0])
    cells = [[_cell(row.get(h, "")) for h in headers] for row in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    lines = [indent + "  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append(indent + "  ".join("-" * w for w in widths))
    lines.extend(indent + "  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells)
    return lines


def format_report(report: Report, mode: str = "human") -> str:
    if mode == "machine":
        return _encode(report_to_dict(report)) + "\n"

    counts = report.counts()
    lines = [
        f"scenario: {report.scenario or '(unnamed)'}",
        f"toolkit {report.version}  schema {report.schema}  seed {report.seed}  "
        f"tol {report.tol:g}  rank_tol {report.rank_tol:g}",
        f"queries: {len(report.results)}  pass {counts['pass']}  fail {counts['fail']}  error {counts['error']}",
    ]
    for r in report.results:
        lines.append("")
        timing = f"  ({r.elapsed:.3f}s)" if report.timings and r.elapsed is not None else ""
        lines.append(f"[{r.index}] {r.kind:<17} {r.status.upper()}{timing}")
        if r.error:
            lines.append(f"    error: {r.error}")
        width = max((len(k) for k in r.values), default=0)
        lines.extend(f"    {k.ljust(width)} = {_cell(v)}" for k, v in r.values.items())
        if r.checks:
            lines.extend(
                _table(
                    [
                        {"check": c.name, "residual": float(c.residual), "tol": float(c.tol),
                         "want": "<=tol" if c.expect_within else ">tol", "ok": "yes" if c.passed else "NO"}
                        for c in r.checks
                    ]
                )
            )
        for title, rows in r.tables.items():
            lines.append(f"    {title}:")
            lines.extend(_table(rows, indent="      "))
    return "\n".join(lines) + "\n"
