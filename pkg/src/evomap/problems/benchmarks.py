"""Benchmark function suite: ten functions across five difficulty categories.

Each instance places its optimum at a point ``x_opt`` drawn uniformly from
[-4, 4]^t and, for the non-separable functions, applies a uniformly random
rotation, so the evaluated variable is ``z = R (x - x_opt)``.  Every function
satisfies ``f(z) >= 0`` with equality exactly at ``z = 0``, hence the optimum
value of every instance is 0 at ``x_opt``.

The search domain is [-5, 5]^t throughout.
"""

from __future__ import annotations

import numpy as np

from .base import Problem

__all__ = [
    "CATEGORIES",
    "BENCHMARKS",
    "BenchmarkProblem",
    "haar_rotation",
    "make_benchmark",
]

CATEGORIES = (
    "separable",
    "low-moderate-conditioning",
    "high-conditioning-unimodal",
    "multimodal-adequate",
    "multimodal-weak",
)

DOMAIN_LOWER = -5.0
DOMAIN_UPPER = 5.0
OPTIMUM_RANGE = 4.0


def haar_rotation(dimension: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a uniformly distributed orthogonal matrix.

    QR decomposition of a Gaussian matrix with the sign of the R diagonal
    folded back into Q, which makes the distribution exactly Haar.
    """
    A = rng.standard_normal((dimension, dimension))
    Q, R = np.linalg.qr(A)
    return Q * np.sign(np.diag(R))


# --- function definitions ------------------------------------------------
# Every function accepts z of shape (..., t) and reduces over the last axis,
# so the same code serves single vectors and batches.

# The two functions below sit in optimizer inner loops, so they avoid the
# ndarray.sum method wrapper and, for short vectors, the generic reduce
# machinery altogether.

def _sum_last(W):
    """Sum over the last axis, bitwise identical to ``np.add.reduce``.

    numpy adds fewer than eight elements sequentially, so a scalar loop gives
    the same bits for short vectors at a fraction of the dispatch cost; the
    test suite pins that equality.
    """
    if W.ndim == 1 and W.shape[0] < 8:
        total = 0.0
        for w in W.tolist():
            total += w
        return total
    return np.add.reduce(W, axis=-1)


def _sphere(Z):
    return _sum_last(Z * Z)


def _rastrigin(Z):
    t = Z.shape[-1]
    return 10.0 * t + _sum_last(Z * Z - 10.0 * np.cos(2.0 * np.pi * Z))


def _rosenbrock(Z):
    Y = Z + 1.0  # optimum moves to the all-ones point of the classic form
    a, b = Y[..., :-1], Y[..., 1:]
    return (100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2).sum(axis=-1)


def _attractive_sector(Z):
    s = np.where(Z > 0.0, 100.0, 1.0)
    v = s * Z
    return (v * v).sum(axis=-1)


def _ellipsoid(Z):
    t = Z.shape[-1]
    if t == 1:
        w = np.ones(1)
    else:
        w = 10.0 ** (6.0 * np.arange(t) / (t - 1))
    return (w * Z * Z).sum(axis=-1)


def _bent_cigar(Z):
    head = Z[..., 0] ** 2
    return head + 1.0e6 * (Z[..., 1:] ** 2).sum(axis=-1)


def _schaffers_f7(Z):
    t = Z.shape[-1]
    s = np.sqrt(Z[..., :-1] ** 2 + Z[..., 1:] ** 2)
    root = np.sqrt(s)
    inner = (root + root * np.sin(50.0 * s**0.2) ** 2).sum(axis=-1) / (t - 1)
    return inner * inner


# Location of the global maximum of g(y) = y sin(sqrt(|y|)) on [-500, 500].
SCHWEFEL_OPT = 420.968746227503
_SCHWEFEL_PEAK = SCHWEFEL_OPT * np.sin(np.sqrt(SCHWEFEL_OPT))


def _schwefel_sine(Z):
    Y = SCHWEFEL_OPT - 100.0 * Z
    g = Y * np.sin(np.sqrt(np.abs(Y)))
    # Outside [-500, 500] the sine landscape keeps growing, so a quadratic
    # boundary penalty is what keeps the function nonnegative with its only
    # zero at Z = 0.
    excess = np.maximum(np.abs(Y) - 500.0, 0.0)
    return (_SCHWEFEL_PEAK - g).sum(axis=-1) + (excess * excess).sum(axis=-1)


def _lunacek_bi_rastrigin(Z):
    t = Z.shape[-1]
    mu0, depth = 2.5, 1.0
    s = 1.0 - 1.0 / (2.0 * np.sqrt(t + 20.0) - 8.2)
    mu1 = -np.sqrt((mu0 * mu0 - depth) / s)
    Y = Z + mu0
    sphere0 = ((Y - mu0) ** 2).sum(axis=-1)
    sphere1 = depth * t + s * ((Y - mu1) ** 2).sum(axis=-1)
    waves = 10.0 * (t - np.cos(2.0 * np.pi * (Y - mu0)).sum(axis=-1))
    return np.minimum(sphere0, sphere1) + waves


# fid -> (category, function, rotated, minimum dimension)
BENCHMARKS = {
    "sphere": ("separable", _sphere, False, 1),
    "rastrigin-sep": ("separable", _rastrigin, False, 1),
    "rosenbrock": ("low-moderate-conditioning", _rosenbrock, True, 2),
    "attractive-sector": ("low-moderate-conditioning", _attractive_sector, True, 1),
    "ellipsoid": ("high-conditioning-unimodal", _ellipsoid, True, 1),
    "bent-cigar": ("high-conditioning-unimodal", _bent_cigar, True, 1),
    "rastrigin-rot": ("multimodal-adequate", _rastrigin, True, 1),
    "schaffers-f7": ("multimodal-adequate", _schaffers_f7, True, 2),
    "schwefel-sine": ("multimodal-weak", _schwefel_sine, True, 1),
    "lunacek-bi-rastrigin": ("multimodal-weak", _lunacek_bi_rastrigin, True, 2),
}


class BenchmarkProblem(Problem):
    """One randomly placed (and possibly rotated) benchmark instance."""

    def __init__(self, fid: str, dimension: int, x_opt: np.ndarray,
                 rotation: np.ndarray | None):
        category, fn, _, min_dim = BENCHMARKS[fid]
        if dimension < min_dim:
            raise ValueError(f"{fid} requires dimension >= {min_dim}")
        super().__init__(dimension, DOMAIN_LOWER, DOMAIN_UPPER, optimum_value=0.0)
        self.fid = fid
        self.category = category
        self.x_opt = np.asarray(x_opt, dtype=float)
        self.rotation = None if rotation is None else np.asarray(rotation, dtype=float)
        self._fn = fn

    def evaluate(self, x) -> float:
        # Mirrors the base wrapper around _evaluate with one call layer less;
        # single-vector evaluation is the optimizer inner loop.
        self.eval_count += 1
        z = np.asarray(x, dtype=float) - self.x_opt
        if self.rotation is not None:
            z = self.rotation @ z
        return float(self._fn(z))

    def _evaluate(self, x):
        z = np.asarray(x, dtype=float) - self.x_opt
        if self.rotation is not None:
            z = self.rotation @ z
        return self._fn(z)

    def _evaluate_batch(self, X):
        Z = np.asarray(X, dtype=float) - self.x_opt
        if self.rotation is not None:
            Z = Z @ self.rotation.T
        return self._fn(Z)


def make_benchmark(fid: str, dimension: int, rng: np.random.Generator) -> BenchmarkProblem:
    """Draw a fresh instance: random optimum location, random rotation.

    Separable functions keep the identity rotation so that they stay
    separable; all others get a Haar-random orthogonal matrix.  The optimum
    is drawn first and the rotation second, which fixes the RNG consumption
    order for reproducibility.
    """
    if fid not in BENCHMARKS:
        raise ValueError(f"unknown benchmark id: {fid!r}")
    _, _, rotated, _ = BENCHMARKS[fid]
    x_opt = rng.uniform(-OPTIMUM_RANGE, OPTIMUM_RANGE, dimension)
    rotation = haar_rotation(dimension, rng) if rotated else None
    return BenchmarkProblem(fid, dimension, x_opt, rotation)
