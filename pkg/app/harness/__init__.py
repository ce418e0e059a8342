from .checks import CATALOG, FAMILIES, PointContext
from .parser import list_scenarios, load_scenario, parse_scenario
from .report import FORMATS, emit_report
from .runner import ScenarioRunner, run_scenario
from .sampling import draw_points
from .schemas import (
    IdentitySummary,
    ImmersionSpec,
    MetricSpec,
    RunReport,
    RunSpec,
    RunSummary,
    Scenario,
    summarize,
)

__all__ = [
    "CATALOG",
    "FAMILIES",
    "FORMATS",
    "IdentitySummary",
    "ImmersionSpec",
    "MetricSpec",
    "PointContext",
    "RunReport",
    "RunSpec",
    "RunSummary",
    "Scenario",
    "ScenarioRunner",
    "draw_points",
    "emit_report",
    "list_scenarios",
    "load_scenario",
    "parse_scenario",
    "run_scenario",
    "summarize",
]
