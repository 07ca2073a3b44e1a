"""evomap: genotype-phenotype mappings for real-valued evolutionary search.

The package couples pluggable genotype representations (identity, expansion
by sum or product, decimal-digit compression) with a steady-state GA and
differential evolution, a benchmark function suite, two model-fitting problem
families (arbiter-PUF weight recovery and network weight regression), rank
statistics for comparing result samples, and a reproducible experiment
harness with a command-line interface.
"""

__version__ = "0.1.0"

from .core import spawn_rng
from .evolvers import DifferentialEvolution, SteadyStateGA
from .mappings import (
    DigitCompression,
    IdentityMapping,
    ProductExpansion,
    SumExpansion,
    mapping_from_code,
)
from .records import HIT_THRESHOLD, TARGETS, RunRecord, ecdf_curve
from .stats import mann_whitney_less, verdict

__all__ = [
    "__version__",
    "spawn_rng",
    "IdentityMapping",
    "SumExpansion",
    "ProductExpansion",
    "DigitCompression",
    "mapping_from_code",
    "SteadyStateGA",
    "DifferentialEvolution",
    "TARGETS",
    "HIT_THRESHOLD",
    "RunRecord",
    "ecdf_curve",
    "mann_whitney_less",
    "verdict",
]
