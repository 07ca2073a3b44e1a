"""Feedforward network weight fitting as a direct-search regression problem.

A fixed four-layer architecture ``a-b-c-d`` (inputs, two sigmoid hidden
layers, linear outputs) is trained on a fixed sample of a target function by
treating the flat parameter vector as the search space and the mean squared
error over the sample as the fitness.  No gradients are involved.

The flat vector is unpacked in this order:

    W1 (b x a, row-major), b1 (b), W2 (c x b), b2 (c), W3 (d x c), b3 (d)

so the total parameter count is ``a*b + b + b*c + c + c*d + d``.
"""

from __future__ import annotations

import numpy as np

from .base import Problem

__all__ = [
    "TASKS",
    "parameter_count",
    "make_dataset",
    "NetworkRegression",
    "make_regression",
]

DOMAIN_LOWER = -5.0
DOMAIN_UPPER = 5.0
DEFAULT_SAMPLES = 275
INPUT_RANGE = 5.0


def _task_f1(X):
    return 3.0 * np.sin(X[:, 0]) + X[:, 0]


def _task_f2(X):
    return X[:, 0] + X[:, 1]


def _task_f3(X):
    return X[:, 0] * np.sin(X[:, 0])


#: task id -> (number of inputs, target function over rows)
TASKS = {
    "f1": (1, _task_f1),
    "f2": (2, _task_f2),
    "f3": (1, _task_f3),
}


def parameter_count(architecture) -> int:
    """Weights plus biases of the a-b-c-d network."""
    a, b, c, d = (int(v) for v in architecture)
    return a * b + b + b * c + c + c * d + d


def make_dataset(task: str, n_samples: int, rng: np.random.Generator):
    """Sample inputs uniformly from [-5, 5] and label them with the task function."""
    if task not in TASKS:
        raise ValueError(f"unknown task: {task!r}")
    n_inputs, fn = TASKS[task]
    X = rng.uniform(-INPUT_RANGE, INPUT_RANGE, size=(int(n_samples), n_inputs))
    return X, fn(X)


class NetworkRegression(Problem):
    """Minimize the MSE of an a-b-c-d network over a fixed dataset."""

    def __init__(self, architecture, inputs: np.ndarray, targets: np.ndarray):
        arch = tuple(int(v) for v in architecture)
        if len(arch) != 4 or min(arch) < 1:
            raise ValueError(f"architecture must be four positive sizes, got {arch}")
        inputs = np.asarray(inputs, dtype=float)
        targets = np.asarray(targets, dtype=float)
        if targets.ndim == 1:
            targets = targets[:, None]
        a, b, c, d = arch
        if inputs.ndim != 2 or inputs.shape[1] != a:
            raise ValueError(f"inputs must have shape (n, {a}), got {inputs.shape}")
        if targets.shape != (inputs.shape[0], d):
            raise ValueError(
                f"targets must have shape ({inputs.shape[0]}, {d}), got {targets.shape}"
            )
        super().__init__(parameter_count(arch), DOMAIN_LOWER, DOMAIN_UPPER)
        self.architecture = arch
        self.inputs = inputs
        self.targets = targets
        # Split points of the flat parameter vector, in unpack order.
        sizes = [a * b, b, b * c, c, c * d, d]
        self._offsets = np.cumsum(sizes)[:-1]

    def _forward(self, theta: np.ndarray) -> np.ndarray:
        a, b, c, d = self.architecture
        w1, b1, w2, b2, w3, b3 = np.split(np.asarray(theta, dtype=float), self._offsets)
        with np.errstate(over="ignore"):
            h1 = 1.0 / (1.0 + np.exp(-(self.inputs @ w1.reshape(b, a).T + b1)))
            h2 = 1.0 / (1.0 + np.exp(-(h1 @ w2.reshape(c, b).T + b2)))
        return h2 @ w3.reshape(d, c).T + b3

    def predict(self, theta: np.ndarray) -> np.ndarray:
        """Network outputs over the dataset for a flat parameter vector."""
        return self._forward(theta)

    def _evaluate(self, theta):
        diff = self._forward(theta) - self.targets
        return (diff * diff).mean()


def make_regression(task: str, architecture, rng: np.random.Generator,
                    n_samples: int = DEFAULT_SAMPLES) -> NetworkRegression:
    """Build a regression problem with a freshly sampled dataset."""
    n_inputs, _ = TASKS[task]
    arch = tuple(int(v) for v in architecture)
    if arch[0] != n_inputs:
        raise ValueError(f"task {task} has {n_inputs} input(s), architecture {arch}")
    X, y = make_dataset(task, n_samples, rng)
    problem = NetworkRegression(arch, X, y)
    problem.task = task
    return problem
