from .expression import MetricExpression
from .lift import fundamental_tensor, homogeneous_lift, norm_sq
from .models import (
    CustomMetric,
    EuclideanMetric,
    MetricKind,
    MetricModel,
    RandersMetric,
    RiemannianChartMetric,
    build_metric,
)
from .schemas import AmbientPoint, MetricAtPoint

__all__ = [
    "AmbientPoint",
    "CustomMetric",
    "EuclideanMetric",
    "MetricAtPoint",
    "MetricExpression",
    "MetricKind",
    "MetricModel",
    "RandersMetric",
    "RiemannianChartMetric",
    "build_metric",
    "fundamental_tensor",
    "homogeneous_lift",
    "norm_sq",
]
