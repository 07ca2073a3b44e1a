"""Steady-state genetic algorithm with a pooled crossover operator."""

from __future__ import annotations

import gc

import numpy as np
from sklearn.base import BaseEstimator

from ..core import as_generator
from ..records import TARGETS
from .crossover import OPERATORS, SMALL_GENOTYPE_CUTOFF, SMALL_OPERATORS

__all__ = ["SteadyStateGA"]


class SteadyStateGA(BaseEstimator):
    """Steady-state GA: one trio tournament and one evaluation per step.

    Each step draws three distinct population members uniformly at random.
    The worst of the three (ties broken uniformly) is replaced by a child of
    the other two, produced by a crossover operator chosen uniformly from the
    ten-operator pool and clipped to the gene domain.  With probability
    ``mutation_probability`` one uniformly chosen gene of the child is reset
    uniformly in the domain.  The child is evaluated once and simply takes the
    loser's slot, so selection pressure comes entirely from the tournament.

    ``fit(problem, mapping)`` runs until exactly ``budget`` objective
    evaluations (including the initial population) have been spent.
    """

    def __init__(self, budget=10000, population_size=100,
                 mutation_probability=0.3, seed=None):
        self.budget = budget
        self.population_size = population_size
        self.mutation_probability = mutation_probability
        self.seed = seed

    def fit(self, problem, mapping):
        rng = as_generator(self.seed)
        budget = int(self.budget)
        pop_size = int(self.population_size)
        if budget < pop_size:
            raise ValueError("budget must cover the initial population")
        mapping.fit(problem)
        lower = mapping.genotype_lower_
        upper = mapping.genotype_upper_
        span = upper - lower
        n_genes = mapping.genotype_length_
        decode = mapping.decode
        evaluate = problem.evaluate
        mutation_probability = float(self.mutation_probability)

        optimum = problem.optimum_value
        targets = TARGETS if optimum is not None else None
        target_evals = np.full(0 if targets is None else targets.size, -1, dtype=np.int64)
        next_target = 0
        # The loop allocates a few short-lived arrays per step and no cycles;
        # pausing the cycle collector saves a few percent of wall time.
        gc_was_enabled = gc.isenabled()
        gc.disable()
        try:
            # Row views in a list: the loop reads two rows and replaces one
            # per step, where list indexing beats ndarray row extraction.
            population = list(rng.uniform(lower, upper, size=(pop_size, n_genes)))
            # Fitness is kept as a plain list for the same reason.
            fitness = [0.0] * pop_size
            best_value = np.inf
            best_index = 0
            evals = 0
            for i in range(pop_size):
                value = evaluate(decode(population[i]))
                fitness[i] = value
                evals += 1
                if value < best_value:
                    best_value = value
                    best_index = i
                    if targets is not None:
                        gap = best_value - optimum
                        while next_target < targets.size and gap <= targets[next_target]:
                            target_evals[next_target] = evals
                            next_target += 1
            best_genotype = population[best_index].copy()

            small = n_genes <= SMALL_GENOTYPE_CUTOFF
            operators = SMALL_OPERATORS if small else OPERATORS
            n_ops = len(operators)
            gene_range = range(n_genes)
            randint = rng.integers
            random = rng.random
            maximum = np.maximum
            minimum = np.minimum
            while evals < budget:
                # Three scalar draws consume the generator stream exactly like
                # one size-3 draw would, and are cheaper.
                a = int(randint(0, pop_size))
                b = int(randint(0, pop_size))
                c = int(randint(0, pop_size))
                if a == b or a == c or b == c:
                    continue  # redraw; budget is only spent on evaluations
                fa, fb, fc = fitness[a], fitness[b], fitness[c]
                # Replace the worst of the trio, ties broken uniformly.  The
                # branches draw from the generator exactly when more than one
                # member attains the maximum, in (a, b, c) order.
                if fa > fb:
                    if fa > fc:
                        loser = a
                    elif fc > fa:
                        loser = c
                    else:
                        loser = a if randint(2) == 0 else c
                elif fb > fa:
                    if fb > fc:
                        loser = b
                    elif fc > fb:
                        loser = c
                    else:
                        loser = b if randint(2) == 0 else c
                elif fa > fc:
                    loser = a if randint(2) == 0 else b
                elif fc > fa:
                    loser = c
                else:
                    r = randint(3)
                    loser = a if r == 0 else (b if r == 1 else c)
                if loser == a:
                    p, q = b, c
                elif loser == b:
                    p, q = a, c
                else:
                    p, q = a, b
                if fitness[q] < fitness[p]:
                    p, q = q, p

                child = operators[randint(n_ops)](population[p], population[q], rng)
                # Clip to the gene domain (operators return fresh arrays).  A
                # scalar loop and the ufunc pair write the same values; the
                # loop is cheaper for a handful of genes, the ufuncs otherwise.
                if small:
                    for j in gene_range:
                        v = child[j]
                        if v < lower:
                            child[j] = lower
                        elif v > upper:
                            child[j] = upper
                else:
                    maximum(child, lower, out=child)
                    minimum(child, upper, out=child)
                if random() < mutation_probability:
                    child[randint(n_genes)] = lower + random() * span

                value = evaluate(decode(child))
                evals += 1
                population[loser] = child
                fitness[loser] = value
                if value < best_value:
                    best_value = value
                    best_genotype = child.copy()
                    if targets is not None:
                        gap = best_value - optimum
                        while next_target < targets.size and gap <= targets[next_target]:
                            target_evals[next_target] = evals
                            next_target += 1
        finally:
            if gc_was_enabled:
                gc.enable()

        self.best_genotype_ = best_genotype
        self.best_phenotype_ = np.array(decode(best_genotype), dtype=float)
        self.best_fitness_ = float(best_value)
        self.evaluations_ = evals
        self.target_evals_ = target_evals
        return self
