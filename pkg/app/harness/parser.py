"""
Scenario file parsing.

A scenario file is UTF-8 text with one `dotted.key = value` per line and `#`
comments. Values are numbers, comma-separated lists, semicolon-separated
matrices of such lists, or plain strings. The flat keys are folded into the
nested Scenario model, and every error is reported with its key and line.
"""

import logging
from pathlib import Path

from pydantic import ValidationError

from app.config import get_settings
from app.errors import ScenarioError

from .schemas import Scenario

logger = logging.getLogger("HARNESS")

SCENARIO_SUFFIX = ".scenario"
SHIPPED_DIR = Path(__file__).parent / "scenarios"

SECTION_KEYS = {
    "metric": {"kind", "n", "p"},
    "immersion": {"kind", "m"},
    "run": {"points", "seed", "checks"},
}
NESTED_KEYS = {"params", "box"}
STRING_KEYS = {
    "name",
    "metric.kind",
    "immersion.kind",
    "run.checks",
    "metric.params.chart",
    "metric.params.expression",
    "immersion.params.normal_delta",
}


def parse_scalar(text: str):
    """int (decimal or 0x hex), then float, else the stripped string."""
    text = text.strip()
    try:
        return int(text, 0)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_number_list(text: str, key: str, line: int) -> list[float]:
    values = []
    for part in text.split(","):
        value = parse_scalar(part)
        if isinstance(value, str):
            raise ScenarioError(f"malformed number {part.strip()!r}", key=key, line=line)
        values.append(value)
    return values


def parse_value(key: str, text: str, line: int):
    if key in STRING_KEYS:
        return text
    if ";" in text:
        return [parse_number_list(row, key, line) for row in text.split(";")]
    if "," in text:
        return parse_number_list(text, key, line)
    return parse_scalar(text)


def _place(data: dict, key: str, value, line: int) -> None:
    """Fold a flat key into the nested scenario dict."""
    parts = key.split(".")
    section = parts[0]
    if key == "name":
        data["name"] = value
    elif section == "tol" and len(parts) > 1:
        data.setdefault("tolerances", {})[".".join(parts[1:])] = value
    elif section in SECTION_KEYS and len(parts) == 2 and parts[1] in SECTION_KEYS[section]:
        data.setdefault(section, {})[parts[1]] = value
    elif section in ("metric", "immersion") and len(parts) == 3 and parts[1] in NESTED_KEYS:
        data.setdefault(section, {}).setdefault(parts[1], {})[parts[2]] = value
    else:
        raise ScenarioError("unknown key", key=key, line=line)


def _validation_error(error: ValidationError, lines: dict[str, int]) -> ScenarioError:
    first = error.errors()[0]
    key = ".".join(str(part) for part in first["loc"]) or None
    if key is not None and key.startswith("tolerances."):
        key = "tol." + key[len("tolerances.") :]
    return ScenarioError(first["msg"], key=key, line=lines.get(key) if key else None)


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    """
    Parse and validate scenario text.

    Args:
        text: Scenario file contents
        name: Scenario name, unless the text sets `name`

    Raises:
        ScenarioError: On malformed lines, unknown or duplicate keys and any
            validation failure, naming the key and line
    """
    data: dict = {"name": name}
    lines: dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ScenarioError("expected 'key = value'", line=number)
        key, value = (part.strip() for part in content.split("=", 1))
        if not key:
            raise ScenarioError("missing key", line=number)
        if key in lines:
            raise ScenarioError(
                f"duplicate key, first set on line {lines[key]}", key=key, line=number
            )
        if not value and key != "run.checks":
            raise ScenarioError("missing value", key=key, line=number)
        lines[key] = number
        _place(data, key, parse_value(key, value, number), number)

    try:
        scenario = Scenario.model_validate(data)
    except ValidationError as e:
        raise _validation_error(e, lines) from e
    logger.debug(f"Parsed scenario {scenario.name!r} with {len(lines)} keys")
    return scenario


def scenario_dirs() -> list[Path]:
    extra = get_settings().HARNESS.SCENARIO_DIR
    return ([Path(extra)] if extra else []) + [SHIPPED_DIR]


def list_scenarios() -> list[str]:
    names = set()
    for directory in scenario_dirs():
        if directory.is_dir():
            names.update(path.stem for path in directory.glob(f"*{SCENARIO_SUFFIX}"))
    return sorted(names)


def load_scenario(source: str | Path) -> Scenario:
    """
    Load a scenario from a file path or by the name of a shipped scenario.

    Raises:
        ScenarioError: If nothing matches `source` or the file is invalid
    """
    path = Path(source)
    if not path.is_file():
        candidates = [directory / f"{source}{SCENARIO_SUFFIX}" for directory in scenario_dirs()]
        path = next((candidate for candidate in candidates if candidate.is_file()), None)
        if path is None:
            raise ScenarioError(
                f"no scenario file or shipped scenario named {str(source)!r}; "
                f"shipped: {', '.join(list_scenarios())}"
            )
    logger.info(f"Loading scenario from {path}")
    return parse_scenario(path.read_text(encoding="utf-8"), name=path.stem)
