"""Genotype-phenotype mappings for real-valued search spaces.

A mapping turns a genotype vector (what the search operators manipulate) into
a phenotype vector (what the objective function evaluates).  Four families are
provided:

``IdentityMapping``
    Genotype and phenotype coincide.
``SumExpansion`` / ``ProductExpansion``
    Each phenotype variable is the sum (resp. product) of ``m`` consecutive
    genes, so the genotype is ``m`` times longer than the phenotype.  Decoded
    values are clipped to the phenotype domain.
``DigitCompression``
    Each gene is a number in [0, 1] whose 16 fractional decimal digits encode
    ``m`` phenotype variables with ``16 / m`` digits each, so the genotype is
    ``m`` times shorter than the phenotype.  Digits can be assigned to the
    variables in contiguous blocks (``"sequential"``) or interleaved round-robin
    (``"alternating"``).

All mappings follow the scikit-learn estimator protocol: hyperparameters are
constructor arguments, geometry is bound to a problem in :meth:`fit`, and
batches decode through :meth:`transform`.  The single-vector :meth:`decode`
avoids per-call validation and is what the optimizers use in their inner loop.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

__all__ = [
    "PRECISION_DIGITS",
    "fraction_digits",
    "GenotypeMapping",
    "IdentityMapping",
    "SumExpansion",
    "ProductExpansion",
    "DigitCompression",
    "mapping_from_code",
    "MAPPING_CODES",
]

# Number of fractional decimal digits a compressed gene carries.  Sixteen is
# the most a double can reproduce through its shortest round-trip rendering.
PRECISION_DIGITS = 16

_ZEROS = "0" * PRECISION_DIGITS
_NINES = "9" * PRECISION_DIGITS


def fraction_digits(value: float) -> str:
    """Return the first 16 fractional decimal digits of ``value`` in [0, 1].

    The digits are read off the canonical shortest round-trip decimal rendering
    of the double (``repr``), zero-padded or truncated to exactly 16 digits.
    This is a string-level contract, not arithmetic: repeatedly multiplying by
    ten in floating point would disagree with the printed digits.  Values at or
    below 0.0 give all zeros; values at or above 1.0 are treated as the largest
    representable fraction, all nines.
    """
    value = float(value)  # numpy scalars repr differently; normalize first
    if value <= 0.0:
        return _ZEROS
    if value >= 1.0:
        return _NINES
    text = repr(value)
    if "e" in text:
        # Small values render in scientific notation, e.g. ``1.2345e-07``.
        mantissa, _, exponent = text.partition("e")
        digits = mantissa.replace(".", "")
        frac = "0" * (-int(exponent) - 1) + digits
    else:
        frac = text[2:]  # strip the leading "0."
    if len(frac) < PRECISION_DIGITS:
        return frac + "0" * (PRECISION_DIGITS - len(frac))
    return frac[:PRECISION_DIGITS]


class GenotypeMapping(BaseEstimator, TransformerMixin):
    """Base class binding mapping geometry to an optimization problem.

    After :meth:`fit` the following attributes are set:

    ``dimension_``         phenotype length (the problem dimension)
    ``genotype_length_``   number of genes the optimizer manipulates
    ``genotype_lower_``    lower bound shared by every gene
    ``genotype_upper_``    upper bound shared by every gene
    """

    #: short identifier used in configuration files and result tables
    code = "base"

    def fit(self, problem, y=None):
        self.dimension_ = int(problem.dimension)
        self._bind(problem)
        return self

    def _bind(self, problem):  # pragma: no cover - abstract
        raise NotImplementedError

    def decode(self, genotype: np.ndarray) -> np.ndarray:
        """Decode a single genotype vector into a phenotype vector."""
        raise NotImplementedError

    def transform(self, X) -> np.ndarray:
        """Decode a batch of genotypes, one per row."""
        check_is_fitted(self, "genotype_length_")
        G = np.asarray(X, dtype=float)
        if G.ndim != 2 or G.shape[1] != self.genotype_length_:
            raise ValueError(
                f"expected shape (n, {self.genotype_length_}), got {G.shape}"
            )
        return self._decode_batch(G)

    def _decode_batch(self, G: np.ndarray) -> np.ndarray:
        return np.stack([self.decode(g) for g in G])


class IdentityMapping(GenotypeMapping):
    """Genotype equals phenotype; bounds are the problem bounds."""

    code = "def"

    def _bind(self, problem):
        self.genotype_length_ = self.dimension_
        self.genotype_lower_ = float(problem.lower)
        self.genotype_upper_ = float(problem.upper)

    def decode(self, genotype: np.ndarray) -> np.ndarray:
        return np.asarray(genotype, dtype=float)

    def _decode_batch(self, G: np.ndarray) -> np.ndarray:
        return G


class _Expansion(GenotypeMapping):
    """Common machinery for sum/product expansion."""

    def __init__(self, genes_per_variable=2):
        self.genes_per_variable = genes_per_variable

    def _bind(self, problem):
        m = int(self.genes_per_variable)
        if m < 1:
            raise ValueError("genes_per_variable must be a positive integer")
        self._m = m
        self.genotype_length_ = self.dimension_ * m
        self.genotype_lower_ = float(problem.lower)
        self.genotype_upper_ = float(problem.upper)

    def _reduce(self, groups: np.ndarray) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    def decode(self, genotype: np.ndarray) -> np.ndarray:
        g = np.asarray(genotype, dtype=float)
        x = self._reduce(g.reshape(self.dimension_, self._m))
        # Same result as np.clip, minus the dispatch wrapper; this sits in
        # optimizer inner loops.  The reduction gave us a fresh array.
        np.maximum(x, self.genotype_lower_, out=x)
        np.minimum(x, self.genotype_upper_, out=x)
        return x

    def _decode_batch(self, G: np.ndarray) -> np.ndarray:
        X = self._reduce(G.reshape(G.shape[0], self.dimension_, self._m))
        return np.clip(X, self.genotype_lower_, self.genotype_upper_)


class SumExpansion(_Expansion):
    """Each phenotype variable is the sum of ``m`` consecutive genes."""

    code = "exp-s"

    def _reduce(self, groups: np.ndarray) -> np.ndarray:
        return np.add.reduce(groups, axis=-1)


class ProductExpansion(_Expansion):
    """Each phenotype variable is the product of ``m`` consecutive genes."""

    code = "exp-m"

    def _reduce(self, groups: np.ndarray) -> np.ndarray:
        return np.multiply.reduce(groups, axis=-1)


class DigitCompression(GenotypeMapping):
    """Pack ``m`` phenotype variables into the decimal digits of one gene.

    Genes live in [0, 1].  The 16 fractional digits of a gene are split into
    ``d = 16 / m`` digits per variable, either as contiguous blocks
    (``order="sequential"``) or interleaved with stride ``m``
    (``order="alternating"``).  Each digit group, read as an integer ``k``,
    decodes to ``lower + (k / 10^d) * (upper - lower)``.

    When the phenotype length ``t`` is not a multiple of ``m`` the final gene
    carries fewer variables; they occupy its leading digit groups and the rest
    of its digits are ignored.
    """

    code = "com"

    def __init__(self, originals_per_gene=2, order="sequential"):
        self.originals_per_gene = originals_per_gene
        self.order = order

    def _bind(self, problem):
        m = int(self.originals_per_gene)
        if m < 1 or PRECISION_DIGITS % m != 0:
            raise ValueError(
                f"originals_per_gene must divide {PRECISION_DIGITS}, got {m}"
            )
        if self.order not in ("sequential", "alternating"):
            raise ValueError(f"unknown digit order: {self.order!r}")
        self._m = m
        self._d = PRECISION_DIGITS // m
        # Dividing by 10^d (exactly representable up to d = 15) keeps the
        # decoded fractions correctly rounded, which multiplying by the
        # rounded 10^-d would not.
        self._scale = 10.0 ** self._d
        self.genotype_length_ = -(-self.dimension_ // m)  # ceil(t / m)
        self.genotype_lower_ = 0.0
        self.genotype_upper_ = 1.0
        self._lower = float(problem.lower)
        self._span = float(problem.upper) - float(problem.lower)
        if self.order == "sequential":
            d = self._d
            self._slices = [slice(k * d, (k + 1) * d) for k in range(m)]
        else:
            self._slices = [slice(k, None, m) for k in range(m)]

    def decode(self, genotype: np.ndarray) -> np.ndarray:
        t = self.dimension_
        lower, span, scale = self._lower, self._span, self._scale
        slices = self._slices
        values = [lower + (int(frac[sl]) / scale) * span
                  for frac in map(fraction_digits,
                                  np.asarray(genotype, dtype=float).tolist())
                  for sl in slices]
        return np.array(values[:t]) if len(values) > t else np.array(values)

    def encode(self, phenotype: np.ndarray) -> np.ndarray:
        """Encode a phenotype into genes, minimizing the decoding error.

        The natural choice — round each variable to ``d`` digits and store the
        resulting decimal as a double — is not always best: in [0.5, 1) there
        are fewer doubles than 16-digit decimals, so some digit strings cannot
        be realized and carry effects can perturb several digit groups at once.
        A small neighborhood of candidate doubles is therefore searched and the
        one whose decoded digits land closest to the target variables wins.
        """
        x = np.asarray(phenotype, dtype=float)
        if x.shape != (self.dimension_,):
            raise ValueError(f"expected shape ({self.dimension_},), got {x.shape}")
        m, d = self._m, self._d
        limit = 10**d - 1
        u = np.clip((x - self._lower) / self._span, 0.0, 1.0)
        genes = np.empty(self.genotype_length_)
        for j in range(self.genotype_length_):
            group = u[j * m : min((j + 1) * m, self.dimension_)]
            targets = group * 10.0**d
            ints = np.minimum(np.round(targets).astype(np.int64), limit)
            genes[j] = self._best_gene(ints, targets, d)
        return genes

    # Right-inverse of transform, row by row.
    def inverse_transform(self, X) -> np.ndarray:
        check_is_fitted(self, "genotype_length_")
        X = np.asarray(X, dtype=float)
        return np.stack([self.encode(x) for x in X])

    def _compose(self, ints: np.ndarray, d: int) -> str:
        """Place zero-padded digit groups into a 16-character string."""
        chars = ["0"] * PRECISION_DIGITS
        for k, value in enumerate(ints):
            chars[self._slices[k]] = f"{int(value):0{d}d}"
        return "".join(chars)

    def _best_gene(self, ints: np.ndarray, targets: np.ndarray, d: int) -> float:
        """Pick the double whose decoded digit groups best match ``targets``.

        Not every digit string is the truncated rendering of some double (in
        [0.5, 1) there are more 16-digit strings than doubles), and storing
        the rounded string as the nearest double can land on a neighboring
        string whose digit groups are off by a decimal carry.  Searching
        jointly over per-group last-digit adjustments and adjacent doubles
        keeps every group within about one unit of its ideal last digit.
        """
        limit = 10**d - 1
        goals = targets.tolist()
        k_orig = len(goals)
        choices = _delta_sets(k_orig)
        best, best_err = 0.0, math.inf
        for deltas in choices:
            cand = [min(max(int(v) + dl, 0), limit) for v, dl in zip(ints, deltas)]
            seed = float("0." + self._compose(cand, d))
            for gene in (seed, math.nextafter(seed, 0.0), math.nextafter(seed, 1.0)):
                if not 0.0 <= gene <= 1.0:
                    continue
                frac = fraction_digits(gene)
                err = max(
                    abs(int(frac[self._slices[k]]) - goals[k])
                    for k in range(k_orig)
                )
                if err < best_err:
                    best, best_err = gene, err
                    if best_err <= 0.5:
                        return best
        return best


@lru_cache(maxsize=None)
def _delta_sets(k: int) -> tuple:
    """Joint last-digit adjustments tried by the encoder, nearest first."""
    if k > 4:  # keep the search bounded for unusually large groups
        return ((0,) * k,)
    return tuple(sorted(product((0, -1, 1), repeat=k),
                        key=lambda ds: sum(abs(v) for v in ds)))


_SIMPLE_CODES = {
    "def": IdentityMapping,
}


def mapping_from_code(code: str) -> GenotypeMapping:
    """Instantiate a mapping from its short identifier.

    Recognized codes: ``def``, ``exp-s-<m>``, ``exp-m-<m>``, ``com-seq``,
    ``com-alt``.
    """
    if code in _SIMPLE_CODES:
        return _SIMPLE_CODES[code]()
    if code == "com-seq":
        return DigitCompression(order="sequential")
    if code == "com-alt":
        return DigitCompression(order="alternating")
    for prefix, cls in (("exp-s-", SumExpansion), ("exp-m-", ProductExpansion)):
        if code.startswith(prefix):
            try:
                m = int(code[len(prefix) :])
            except ValueError:
                raise ValueError(f"unknown mapping code: {code!r}") from None
            return cls(genes_per_variable=m)
    raise ValueError(f"unknown mapping code: {code!r}")


#: codes commonly used in experiment configurations
MAPPING_CODES = ("def", "exp-s-2", "exp-s-3", "exp-m-2", "exp-m-3", "com-seq", "com-alt")
