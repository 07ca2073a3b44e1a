"""Real-valued crossover operator pool.

Every operator takes two parents and returns one child.  The first parent is
the fitter of the two; only the heuristic operator actually uses that
ordering, the others treat the parents symmetrically.  Children may leave the
gene domain (e.g. BLX or line crossover); the caller clips them.

The pool order is fixed because operator selection draws an index from it;
reordering would change seeded runs.

For short genotypes the per-call overhead of numpy array operations dominates
the arithmetic, so :data:`SMALL_OPERATORS` provides scalar-loop forms of the
operators where that is measurably faster.  They draw from the generator with
the same calls and perform the same floating-point operations in the same
order, so their output is bit-for-bit identical to the array forms; the test
suite enforces that equality.
"""

from __future__ import annotations

import numpy as np

__all__ = ["OPERATORS", "OPERATOR_IDS", "SMALL_OPERATORS", "SMALL_GENOTYPE_CUTOFF"]


def discrete(better, worse, rng):
    """Each gene copied from either parent with equal probability."""
    take_first = rng.random(better.shape[0]) < 0.5
    return np.where(take_first, better, worse)


def simple_arithmetic(better, worse, rng):
    """Head copied from one parent, genes after a random cut averaged."""
    n = better.shape[0]
    head = better if rng.random() < 0.5 else worse
    cut = int(rng.integers(1, n)) if n > 1 else 0
    child = head.copy()
    child[cut:] = 0.5 * (better[cut:] + worse[cut:])
    return child


def whole_arithmetic(better, worse, rng):
    """Blend of the parents with a single random weight."""
    a = rng.random()
    return a * better + (1.0 - a) * worse


def local_arithmetic(better, worse, rng):
    """Blend with an independent random weight per gene."""
    a = rng.random(better.shape[0])
    return a * better + (1.0 - a) * worse


def simulated_binary(better, worse, rng, eta: float = 2.0):
    """SBX: per-gene spread drawn from the polynomial distribution.

    The operator defines two symmetric children; one of them is returned,
    chosen uniformly.
    """
    u = rng.random(better.shape[0])
    beta = np.where(
        u <= 0.5,
        (2.0 * u) ** (1.0 / (eta + 1.0)),
        (0.5 / (1.0 - u)) ** (1.0 / (eta + 1.0)),
    )
    if rng.random() < 0.5:
        beta = -beta
    return 0.5 * ((1.0 + beta) * better + (1.0 - beta) * worse)


def blx_alpha(better, worse, rng, alpha: float = 0.5):
    """BLX-alpha: per gene, uniform on the parent interval widened by alpha.

    Written as ``low + u * width`` rather than ``rng.uniform(low, high)``;
    the two are bitwise identical but the former skips the broadcast
    machinery, which matters in the optimizer inner loop.
    """
    lo = np.minimum(better, worse)
    hi = np.maximum(better, worse)
    margin = alpha * (hi - lo)
    low = lo - margin
    return low + rng.random(better.shape[0]) * ((hi + margin) - low)


def flat(better, worse, rng):
    """Per gene, uniform between the two parent values."""
    lo = np.minimum(better, worse)
    hi = np.maximum(better, worse)
    return lo + rng.random(better.shape[0]) * (hi - lo)


def line(better, worse, rng):
    """Point on the extended line through the parents (single weight)."""
    a = rng.uniform(-0.25, 1.25)
    return better + a * (worse - better)


def heuristic(better, worse, rng):
    """Step from the better parent away from the worse one."""
    r = rng.random()
    return better + r * (better - worse)


def average(better, worse, rng):
    """Midpoint of the parents."""
    return 0.5 * (better + worse)


OPERATORS = (
    discrete,
    simple_arithmetic,
    whole_arithmetic,
    local_arithmetic,
    simulated_binary,
    blx_alpha,
    flat,
    line,
    heuristic,
    average,
)

OPERATOR_IDS = tuple(op.__name__ for op in OPERATORS)


# --- small-vector forms ----------------------------------------------------
# Bitwise-identical scalar loops over the genes.  Ties in np.minimum and
# np.maximum resolve to the second argument, which the explicit comparisons
# below reproduce (including for signed zeros).  Only operators whose array
# form spends most of its time in per-call overhead get a scalar form;
# ``discrete`` and ``line`` are as fast as arrays already.

def _simple_arithmetic_small(better, worse, rng):
    n = better.shape[0]
    head = better if rng.random() < 0.5 else worse
    cut = int(rng.integers(1, n)) if n > 1 else 0
    b = better.tolist()
    w = worse.tolist()
    return np.array(head.tolist()[:cut] + [0.5 * (b[j] + w[j]) for j in range(cut, n)])


def _whole_arithmetic_small(better, worse, rng):
    a = rng.random()
    c = 1.0 - a
    return np.array([a * bj + c * wj for bj, wj in zip(better.tolist(), worse.tolist())])


def _local_arithmetic_small(better, worse, rng):
    u = rng.random(better.shape[0]).tolist()
    return np.array([aj * bj + (1.0 - aj) * wj
                     for aj, bj, wj in zip(u, better.tolist(), worse.tolist())])


def _simulated_binary_small(better, worse, rng, eta: float = 2.0):
    e = 1.0 / (eta + 1.0)
    u = rng.random(better.shape[0]).tolist()
    negate = rng.random() < 0.5
    out = []
    for uj, bj, wj in zip(u, better.tolist(), worse.tolist()):
        beta = (2.0 * uj) ** e if uj <= 0.5 else (0.5 / (1.0 - uj)) ** e
        if negate:
            beta = -beta
        out.append(0.5 * ((1.0 + beta) * bj + (1.0 - beta) * wj))
    return np.array(out)


def _blx_alpha_small(better, worse, rng, alpha: float = 0.5):
    u = rng.random(better.shape[0]).tolist()
    out = []
    for uj, bj, wj in zip(u, better.tolist(), worse.tolist()):
        lo = bj if bj < wj else wj
        hi = bj if bj > wj else wj
        margin = alpha * (hi - lo)
        low = lo - margin
        out.append(low + uj * ((hi + margin) - low))
    return np.array(out)


def _flat_small(better, worse, rng):
    u = rng.random(better.shape[0]).tolist()
    out = []
    for uj, bj, wj in zip(u, better.tolist(), worse.tolist()):
        lo = bj if bj < wj else wj
        hi = bj if bj > wj else wj
        out.append(lo + uj * (hi - lo))
    return np.array(out)


def _heuristic_small(better, worse, rng):
    r = rng.random()
    return np.array([bj + r * (bj - wj) for bj, wj in zip(better.tolist(), worse.tolist())])


def _average_small(better, worse, rng):
    return np.array([0.5 * (bj + wj) for bj, wj in zip(better.tolist(), worse.tolist())])


#: Genotype lengths up to this use :data:`SMALL_OPERATORS` in the GA loop.
SMALL_GENOTYPE_CUTOFF = 8

#: Same pool as :data:`OPERATORS`, with scalar forms substituted where faster.
SMALL_OPERATORS = (
    discrete,
    _simple_arithmetic_small,
    _whole_arithmetic_small,
    _local_arithmetic_small,
    _simulated_binary_small,
    _blx_alpha_small,
    _flat_small,
    line,
    _heuristic_small,
    _average_small,
)
