"""
Exception hierarchy for the engine and the harness.

Engine operations raise the most specific subclass. The harness turns any
DomainError raised at a sample point into a per-point error row; a
ScenarioError aborts the run as a configuration error.
"""


class EngineError(Exception):
    """Base class for every error raised by the engine."""


class OrderOverflowError(EngineError):
    """A derivative of higher order than the engine supports was requested."""


class DomainError(EngineError):
    """Evaluation reached a point where a field is not smooth or not defined."""


class NullSectionError(DomainError):
    """The fiber coordinate is too close to the null section."""


class DegenerateMetricError(DomainError):
    """A fundamental or induced metric is singular at the point."""


class RankDeficiencyError(DomainError):
    """The immersion jacobian does not have full rank."""


class FrameSmoothnessError(DomainError):
    """The normal frame pivots are ambiguous, so the frame is not smooth nearby."""


class VarianceMismatchError(EngineError):
    """A tensor's declared index variance does not match its shape."""


class ScenarioError(EngineError):
    """
    Invalid scenario configuration.

    Args:
        message: What is wrong
        key: Dotted scenario key the problem refers to, if any
        line: 1-based line number in the scenario text, if known
    """

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")
