"""
Report rendering.

The machine form is one JSON document with every float written with 17
significant digits, so it parses back to the same doubles; non-finite
numbers become null. The human form is a pandas table of the same numbers.
"""

import enum
import json
import math

import pandas as pd

from .schemas import RunReport

FORMATS = ("human", "machine")
ROW_COLUMNS = [
    "point",
    "identity",
    "mode",
    "rel_residual",
    "tolerance",
    "passed",
    "abs_residual",
    "lhs_norm",
    "rhs_norm",
    "reference",
    "message",
]
SUMMARY_COLUMNS = ["identity", "mode", "rows", "max_rel_residual", "tolerance", "failed", "passed"]


def format_float(value: float) -> str:
    return f"{value:.17g}"


def _encode(value, level: int = 0) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(key))}: {_encode(item, level + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(not isinstance(item, (dict, list, tuple)) for item in value):
            return "[" + ", ".join(_encode(item) for item in value) + "]"
        items = [f"{inner}{_encode(item, level + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, enum.Enum):
        return json.dumps(value.value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value) if math.isfinite(value) else "null"
    return json.dumps(str(value))


def to_machine(report: RunReport) -> str:
    document = {
        "schema_version": report.schema_version,
        "engine_version": report.engine_version,
        "scenario": report.scenario.model_dump(mode="python"),
        "rows": [row.model_dump(mode="python") for row in report.rows],
        "summary": report.summary.model_dump(mode="python"),
        "wall_time_s": report.wall_time_s,
    }
    return _encode(document) + "\n"


def _frame(records: list[dict], columns: list[str]) -> pd.DataFrame:
    frame = pd.DataFrame.from_records(records, columns=columns)
    if "mode" in frame:
        frame["mode"] = frame["mode"].map(lambda mode: mode.value)
    if "passed" in frame:
        frame["passed"] = frame["passed"].map(
            lambda passed: "-" if passed is None else ("yes" if passed else "NO")
        )
    return frame


def _table(frame: pd.DataFrame) -> str:
    return frame.to_string(index=False, float_format=format_float, na_rep="-")


def to_human(report: RunReport) -> str:
    summary = report.summary
    lines = [
        f"Scenario: {report.scenario.name}",
        f"Engine version: {report.engine_version}",
        f"Metric: {report.scenario.metric.kind} (n={report.scenario.metric.n}), "
        f"immersion: {report.scenario.immersion.kind} (m={report.scenario.immersion.m})",
        f"Points: {report.scenario.run.points}, seed: {report.scenario.run.seed:#x}",
        f"Verdict: {summary.verdict.upper()} "
        f"(asserted {summary.asserted}, failed {summary.failed}, "
        f"informational {summary.informational}, errors {summary.errors})",
        f"Wall time: {report.wall_time_s:.3f}s",
        "",
    ]
    if not report.rows:
        lines.append("No checks selected.")
        return "\n".join(lines) + "\n"

    summary_records = [item.model_dump() for item in summary.identities]
    lines += ["Summary", _table(_frame(summary_records, SUMMARY_COLUMNS)), ""]
    row_records = [row.model_dump() for row in report.rows]
    lines += ["Rows", _table(_frame(row_records, ROW_COLUMNS))]
    return "\n".join(lines) + "\n"


def emit_report(report: RunReport, format: str = "human") -> str:
    """
    Render a report.

    Args:
        report: Result of run_scenario
        format: "human" for aligned tables, "machine" for the JSON document
    """
    if format == "machine":
        return to_machine(report)
    if format == "human":
        return to_human(report)
    raise ValueError(f"Unknown report format {format!r}, expected one of {FORMATS}")
