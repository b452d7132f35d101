"""Recognise finite metric spaces realised by a spanning tree of their own
points, and measure how far a space is from that."""

from .conditions import (
    ConditionResult,
    PathDeviance,
    Roundaboutness,
    fourth_point_condition,
    hyperbolicity,
    median,
    path_deviance,
    roundaboutness,
    three_point_condition,
)
from .geodesic import (
    EdgeClass,
    WeightedGraph,
    basic_geodesic_graph,
    classify_edge,
    complete_graph,
    verify_realisation,
)
from .metric_core import (
    FiniteMetricSpace,
    MetricError,
    MetricViolation,
    check_tie_breaking,
    metric_interval,
    validate_metric,
)
from .recognition import RecognitionVerdict, mst, recognize, recognize_path

__all__ = [
    "ConditionResult",
    "EdgeClass",
    "FiniteMetricSpace",
    "MetricError",
    "MetricViolation",
    "PathDeviance",
    "RecognitionVerdict",
    "Roundaboutness",
    "WeightedGraph",
    "basic_geodesic_graph",
    "check_tie_breaking",
    "classify_edge",
    "complete_graph",
    "fourth_point_condition",
    "hyperbolicity",
    "median",
    "metric_interval",
    "mst",
    "path_deviance",
    "recognize",
    "recognize_path",
    "roundaboutness",
    "three_point_condition",
    "validate_metric",
    "verify_realisation",
]
