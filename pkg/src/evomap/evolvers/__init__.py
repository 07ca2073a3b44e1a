"""Search algorithms operating on genotypes through a mapping."""

from .crossover import OPERATORS, OPERATOR_IDS
from .de import DifferentialEvolution
from .ga import SteadyStateGA

__all__ = ["OPERATORS", "OPERATOR_IDS", "SteadyStateGA", "DifferentialEvolution"]
