"""Optimization problems: benchmark functions, PUF modeling, network regression."""

from .base import Problem
from .benchmarks import (
    BENCHMARKS,
    CATEGORIES,
    BenchmarkProblem,
    haar_rotation,
    make_benchmark,
)
from .puf import ArbiterPUF, challenge_features
from .regression import (
    TASKS,
    NetworkRegression,
    make_dataset,
    make_regression,
    parameter_count,
)

__all__ = [
    "Problem",
    "BENCHMARKS",
    "CATEGORIES",
    "BenchmarkProblem",
    "haar_rotation",
    "make_benchmark",
    "ArbiterPUF",
    "challenge_features",
    "TASKS",
    "NetworkRegression",
    "make_dataset",
    "make_regression",
    "parameter_count",
]
