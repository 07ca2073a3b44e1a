"""Arbiter PUF modeling as a weight-recovery optimization problem.

An arbiter PUF with ``n`` stages maps a challenge ``c in {0,1}^n`` to a binary
response through a linear delay model: the challenge is lifted to the feature
vector ``phi`` with

    phi_i = prod_{l=i}^{n} (-1)^{c_l}   for i = 1..n,      phi_{n+1} = 1,

and the response is 1 when ``w . phi <= 0`` and 0 otherwise, where ``w`` is the
(n+1)-dimensional delay parameter vector of the device.  Modeling the device
from observed challenge-response pairs (CRPs) then becomes minimizing the
number of mispredicted responses over the CRP set.

Because only the sign of ``w . phi`` matters, any positive scaling of ``w``
is an equally perfect model.
"""

from __future__ import annotations

import numpy as np

from .base import Problem

__all__ = ["challenge_features", "ArbiterPUF"]

DOMAIN_LOWER = -5.0
DOMAIN_UPPER = 5.0


def challenge_features(challenges: np.ndarray) -> np.ndarray:
    """Lift 0/1 challenge rows of shape (N, n) to feature rows of shape (N, n+1).

    Feature ``i`` is the product of the stage signs ``(-1)^{c_l}`` from stage
    ``i`` to the last stage; the constant 1 is appended as the final feature.
    """
    C = np.asarray(challenges)
    if C.ndim != 2:
        raise ValueError(f"challenges must be 2-D, got shape {C.shape}")
    signs = 1.0 - 2.0 * C.astype(float)
    n_rows, n_stages = C.shape
    feats = np.ones((n_rows, n_stages + 1))
    feats[:, :n_stages] = np.cumprod(signs[:, ::-1], axis=1)[:, ::-1]
    return feats


class ArbiterPUF(Problem):
    """Recover a hidden delay vector from challenge-response observations.

    The constructor draws the hidden weights (standard normal, as delay
    differences are sums of many independent element delays) and then the
    challenge set (uniform bits); fitness of a candidate ``x`` is the number
    of challenges whose predicted response disagrees with the device.
    """

    def __init__(self, n_stages: int, n_challenges: int, rng: np.random.Generator):
        super().__init__(n_stages + 1, DOMAIN_LOWER, DOMAIN_UPPER, optimum_value=0.0)
        self.n_stages = int(n_stages)
        self.n_challenges = int(n_challenges)
        self.hidden_weights = rng.standard_normal(n_stages + 1)
        self.challenges = rng.integers(0, 2, size=(n_challenges, n_stages))
        self.features = challenge_features(self.challenges)
        self.responses = self.features @ self.hidden_weights <= 0.0

    def _evaluate(self, x):
        predicted = self.features @ np.asarray(x, dtype=float) <= 0.0
        return np.count_nonzero(predicted != self.responses)

    def _evaluate_batch(self, X):
        predicted = (self.features @ X.T) <= 0.0
        return np.count_nonzero(predicted != self.responses[:, None], axis=0)
