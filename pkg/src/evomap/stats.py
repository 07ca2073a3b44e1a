"""Rank statistics for comparing paired sets of optimization results.

The one-sided Mann-Whitney test asks whether the values in one sample tend to
be smaller than those in another.  For small samples the p-value is computed
exactly by enumerating every assignment of the pooled values to the two
groups; for larger samples a tie-corrected normal approximation with
continuity correction is used.

``verdict`` wraps the test into the three-way comparison used in result
tables: for a minimized quantity, sample ``a`` versus baseline ``b`` yields
``"+"`` (significantly better), ``"-"`` (significantly worse), or ``"="``.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

__all__ = ["u_statistic", "mann_whitney_less", "verdict", "ALPHA"]

ALPHA = 0.05

#: enumerate exactly when the number of group assignments is at most this
EXACT_LIMIT = 100_000


def u_statistic(a, b) -> float:
    """U = #{a_i < b_j} + 0.5 #{a_i = b_j}: large when ``a`` runs small."""
    a = np.asarray(a, dtype=float)[:, None]
    b = np.asarray(b, dtype=float)[None, :]
    return float((a < b).sum() + 0.5 * (a == b).sum())


def _midranks(pooled: np.ndarray) -> np.ndarray:
    order = np.argsort(pooled, kind="stable")
    ranks = np.empty(pooled.size)
    sorted_vals = pooled[order]
    i = 0
    while i < pooled.size:
        j = i
        while j + 1 < pooled.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def mann_whitney_less(a, b, method: str = "auto") -> float:
    """One-sided p-value for "values in ``a`` tend to be less than in ``b``".

    ``method`` is ``"exact"`` (full enumeration), ``"approx"`` (tie-corrected
    normal approximation with continuity correction), or ``"auto"`` (exact
    when the enumeration stays below :data:`EXACT_LIMIT` assignments).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n1, n2 = a.size, b.size
    if n1 == 0 or n2 == 0:
        raise ValueError("both samples must be non-empty")
    u_obs = u_statistic(a, b)
    if method == "auto":
        method = "exact" if math.comb(n1 + n2, n1) <= EXACT_LIMIT else "approx"
    if method == "exact":
        return _exact_p(a, b, u_obs)
    if method == "approx":
        return _approx_p(a, b, u_obs)
    raise ValueError(f"unknown method: {method!r}")


def _exact_p(a: np.ndarray, b: np.ndarray, u_obs: float) -> float:
    """P(U >= u_obs) over all assignments of the pooled values to group a.

    With midranks, U for group ``a`` equals ``n1*n2 - (R1 - n1(n1+1)/2)``
    where ``R1`` is the rank sum of ``a``; enumerating rank-sum combinations
    is much cheaper than re-counting pairs.  All quantities are multiples of
    one half and exactly representable, so a tiny tolerance suffices to make
    the comparison robust.
    """
    pooled = np.concatenate([a, b])
    ranks = _midranks(pooled)
    n1 = a.size
    n2 = b.size
    offset = n1 * n2 + n1 * (n1 + 1) / 2.0
    hits = 0
    total = 0
    threshold = u_obs - 1e-9
    for combo in combinations(ranks.tolist(), n1):
        # U of this assignment, from its rank sum.
        if offset - sum(combo) >= threshold:
            hits += 1
        total += 1
    return hits / total


def _approx_p(a: np.ndarray, b: np.ndarray, u_obs: float) -> float:
    n1, n2 = a.size, b.size
    n = n1 + n2
    pooled = np.concatenate([a, b])
    _, counts = np.unique(pooled, return_counts=True)
    tie_term = (counts.astype(float) ** 3 - counts).sum()
    variance = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if variance <= 0.0:
        return 1.0  # all pooled values identical: no evidence either way
    z = (u_obs - n1 * n2 / 2.0 - 0.5) / math.sqrt(variance)
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def verdict(a, b, alpha: float = ALPHA) -> str:
    """Three-way comparison of minimized samples: is ``a`` better than ``b``?

    ``"+"`` when ``a`` is significantly smaller, else ``"-"`` when ``a`` is
    significantly larger, else ``"="``.  Both one-sided tests run at the same
    level, mirroring the two-step protocol behind comparison tables.
    """
    if mann_whitney_less(a, b) < alpha:
        return "+"
    if mann_whitney_less(b, a) < alpha:
        return "-"
    return "="
