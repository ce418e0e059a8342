import numpy as np
import pytest

from app.config import Settings, get_settings
from app.metric import (
    AmbientPoint,
    CustomMetric,
    EuclideanMetric,
    RandersMetric,
    RiemannianChartMetric,
)
from app.submanifold import SubPoint, build_immersion

RANDERS_DRIFT = (0.3, 0.1, 0.0)


def assert_close(actual, expected, tol: float = 1e-10):
    """Helper comparing coefficient arrays with a relative-to-one tolerance."""
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    assert actual.shape == expected.shape
    scale = 1.0 + max(float(np.max(np.abs(expected), initial=0.0)), 0.0)
    assert float(np.max(np.abs(actual - expected), initial=0.0)) <= tol * scale


@pytest.fixture(scope="session")
def test_settings() -> Settings:
    """Provide the settings the engine reads"""
    return get_settings()


@pytest.fixture
def euclidean() -> EuclideanMetric:
    """Euclidean 3-space"""
    return EuclideanMetric(3)


@pytest.fixture
def sphere_chart() -> RiemannianChartMetric:
    """Unit 2-sphere in the chart g = diag(1, sin²x1)"""
    return RiemannianChartMetric(2)


@pytest.fixture
def sphere_chart3() -> RiemannianChartMetric:
    """Unit 3-sphere in hyperspherical coordinates"""
    return RiemannianChartMetric(3)


@pytest.fixture
def randers() -> RandersMetric:
    """Randers metric over Euclidean 3-space with a constant drift"""
    return RandersMetric(3, b=RANDERS_DRIFT)


@pytest.fixture
def custom_euclidean() -> CustomMetric:
    """Euclidean 3-space written as a custom expression"""
    return CustomMetric(3, expression="y1*y1 + y2*y2 + y3*y3")


@pytest.fixture
def plane():
    """Coordinate plane in 3-space"""
    return build_immersion("plane", 2, 3)


@pytest.fixture
def unit_sphere():
    """Unit sphere in 3-space"""
    return build_immersion("sphere", 2, 3, {"radius": 1.0})


@pytest.fixture
def saddle():
    """Saddle graph x3 = 0.5 u1 u2"""
    return build_immersion("graph", 2, 3, {"coefficient": 0.5})


@pytest.fixture
def geodesic_slice():
    """Slice x3 = 0.3 of the hyperspherical chart"""
    return build_immersion(
        "linear", 2, 3, {"matrix": [[1, 0], [0, 1], [0, 0]], "offset": [0, 0, 0.3]}
    )


@pytest.fixture
def ambient_point() -> AmbientPoint:
    """A point of the slit bundle of a 3-dimensional chart"""
    return AmbientPoint(x=(0.7, 1.1, 0.2), y=(0.9, -0.4, 0.6))


@pytest.fixture
def sphere_point() -> AmbientPoint:
    """A point of the slit bundle of the 2-sphere chart"""
    return AmbientPoint(x=(0.9, 0.4), y=(0.8, 1.3))


@pytest.fixture
def sub_point() -> SubPoint:
    """A point of the submanifold bundle, inside every shipped immersion box"""
    return SubPoint(u=(0.8, 0.5), v=(1.0, -0.6))


@pytest.fixture
def slice_point() -> SubPoint:
    """A point of the geodesic slice inside the hyperspherical chart box"""
    return SubPoint(u=(1.2, 0.9), v=(0.7, 1.1))
