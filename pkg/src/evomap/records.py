"""Run records, the target ladder, and ECDF aggregation.

A *target* is a distance-to-optimum threshold.  The ladder spans 10^2 down to
10^-8 in uniform log steps, 51 values in all; the final rung, 10^-8, is the
hit threshold: a run that closes the optimality gap to 10^-8 or less has
solved its instance.

Optimizers record, for each target, the evaluation count at which their best
fitness first reached ``optimum + target``.  The ECDF aggregates those events
over runs: at evaluation budget ``x`` it reports the fraction of all
(run, target) pairs already achieved, the standard any-time view of optimizer
performance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["TARGETS", "HIT_THRESHOLD", "N_TARGETS", "RunRecord", "ecdf_curve"]

#: distance-to-optimum targets, descending from 10^2 to 10^-8
TARGETS = 10.0 ** np.linspace(2, -8, 51)
N_TARGETS = TARGETS.size
#: gap at or below which a run counts as having solved the instance
HIT_THRESHOLD = 1e-8


@dataclass
class RunRecord:
    """Outcome of a single optimizer run on a single problem instance."""

    problem: str
    category: str
    dimension: int
    mapping: str
    algorithm: str
    run: int
    budget: int
    evaluations: int
    best_fitness: float
    optimum: float | None
    #: evaluation count at which each target was first reached; -1 = never.
    #: Empty when the problem has no known optimum.
    target_evals: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))

    @property
    def hit(self) -> bool:
        """Whether the final target (gap <= 10^-8) was reached."""
        return self.target_evals.size > 0 and self.target_evals[-1] >= 0


def ecdf_curve(target_evals_rows) -> tuple[np.ndarray, np.ndarray]:
    """Aggregate per-run target-hit evaluation counts into an ECDF.

    ``target_evals_rows`` is an iterable of integer arrays, one per run, each
    holding the evaluation count at which that run first reached each target
    (-1 for targets never reached).  Returns ``(evaluations, fraction)``
    arrays: at budget ``evaluations[i]`` exactly ``fraction[i]`` of all
    (run, target) pairs were achieved.  The fraction is nondecreasing and
    lies in [0, 1].
    """
    rows = [np.asarray(r, dtype=np.int64) for r in target_evals_rows]
    if not rows:
        return np.empty(0, dtype=np.int64), np.empty(0)
    total = sum(r.size for r in rows)
    events = np.concatenate(rows)
    events = np.sort(events[events >= 0])
    if events.size == 0:
        return np.empty(0, dtype=np.int64), np.empty(0)
    xs, counts = np.unique(events, return_counts=True)
    return xs, np.cumsum(counts) / total
