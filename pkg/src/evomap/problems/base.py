"""Base class for bounded real-valued minimization problems."""

from __future__ import annotations

import numpy as np

__all__ = ["Problem"]


class Problem:
    """A minimization problem over a box domain with evaluation counting.

    Every call to :meth:`evaluate` or :meth:`evaluate_batch` increments
    ``eval_count``; optimizers rely on this to account for their budget
    exactly.  ``optimum_value`` is the known global minimum value when the
    problem has one (``None`` otherwise), which is what hit detection and
    target bookkeeping are measured against.
    """

    def __init__(self, dimension: int, lower: float, upper: float,
                 optimum_value: float | None = None):
        self.dimension = int(dimension)
        self.lower = float(lower)
        self.upper = float(upper)
        self.optimum_value = optimum_value
        self.eval_count = 0

    def evaluate(self, x) -> float:
        """Evaluate one phenotype vector."""
        self.eval_count += 1
        return float(self._evaluate(x))

    def evaluate_batch(self, X) -> np.ndarray:
        """Evaluate one phenotype per row; counts ``len(X)`` evaluations."""
        X = np.asarray(X, dtype=float)
        self.eval_count += X.shape[0]
        return np.asarray(self._evaluate_batch(X), dtype=float)

    def _evaluate(self, x) -> float:  # pragma: no cover - abstract
        raise NotImplementedError

    def _evaluate_batch(self, X: np.ndarray) -> np.ndarray:
        return np.array([self._evaluate(x) for x in X])

    def __repr__(self):
        name = type(self).__name__
        return (f"{name}(dimension={self.dimension}, "
                f"bounds=[{self.lower}, {self.upper}])")
