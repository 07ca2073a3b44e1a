"""Differential evolution, rand/1/bin variant."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from ..core import as_generator
from ..records import TARGETS

__all__ = ["DifferentialEvolution"]


class DifferentialEvolution(BaseEstimator):
    """Generational DE/rand/1/bin.

    For each target ``i`` three mutually distinct members (all different from
    ``i``) are drawn; the mutant is ``x_r1 + F (x_r2 - x_r3)``, recombined
    with the target gene-wise (probability ``crossover_rate``, with one gene
    forced from the mutant), clipped to the gene domain, and evaluated.  A
    trial replaces its target when its fitness is no worse.  All trials of a
    generation are built from the old population before any replacement.

    ``fit(problem, mapping)`` spends exactly ``budget`` evaluations; the last
    generation is truncated when the remaining budget is smaller than the
    population.
    """

    def __init__(self, budget=10000, population_size=100, scale_factor=1.0,
                 crossover_rate=0.9, seed=None):
        self.budget = budget
        self.population_size = population_size
        self.scale_factor = scale_factor
        self.crossover_rate = crossover_rate
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
        n_genes = mapping.genotype_length_
        F = float(self.scale_factor)
        CR = float(self.crossover_rate)

        optimum = problem.optimum_value
        targets = TARGETS if optimum is not None else None
        target_evals = np.full(0 if targets is None else targets.size, -1, dtype=np.int64)
        next_target = 0

        population = rng.uniform(lower, upper, size=(pop_size, n_genes))
        fitness = problem.evaluate_batch(mapping.transform(population))
        evals = pop_size
        # Best-so-far is tracked in evaluation order so that each target is
        # credited at the exact evaluation that first reached it.
        best_value = np.inf
        for i in range(pop_size):
            if fitness[i] < best_value:
                best_value = fitness[i]
                if targets is not None:
                    gap = best_value - optimum
                    while next_target < targets.size and gap <= targets[next_target]:
                        target_evals[next_target] = i + 1
                        next_target += 1

        rows = np.arange(pop_size)
        while evals < budget:
            n_trials = min(pop_size, budget - evals)
            partners = rng.integers(0, pop_size, size=(pop_size, 3))
            while True:
                bad = (
                    (partners[:, 0] == partners[:, 1])
                    | (partners[:, 0] == partners[:, 2])
                    | (partners[:, 1] == partners[:, 2])
                    | (partners == rows[:, None]).any(axis=1)
                )
                if not bad.any():
                    break
                partners[bad] = rng.integers(0, pop_size, size=(int(bad.sum()), 3))
            mutants = population[partners[:, 0]] + F * (
                population[partners[:, 1]] - population[partners[:, 2]]
            )
            cross = rng.random((pop_size, n_genes)) < CR
            cross[rows, rng.integers(0, n_genes, pop_size)] = True
            trials = np.where(cross, mutants, population)
            np.clip(trials, lower, upper, out=trials)

            trials = trials[:n_trials]
            trial_fitness = problem.evaluate_batch(mapping.transform(trials))
            for i in range(n_trials):
                if trial_fitness[i] < best_value:
                    best_value = trial_fitness[i]
                    if targets is not None:
                        gap = best_value - optimum
                        while next_target < targets.size and gap <= targets[next_target]:
                            target_evals[next_target] = evals + i + 1
                            next_target += 1
            evals += n_trials

            improved = trial_fitness <= fitness[:n_trials]
            population[:n_trials][improved] = trials[improved]
            fitness[:n_trials][improved] = trial_fitness[improved]

        # Greedy replacement admits every best-so-far improvement into the
        # population, so the population minimum is the overall best.
        idx = int(np.argmin(fitness))
        self.best_genotype_ = population[idx].copy()
        self.best_phenotype_ = np.array(mapping.decode(self.best_genotype_), dtype=float)
        self.best_fitness_ = float(fitness[idx])
        self.evaluations_ = evals
        self.target_evals_ = target_evals
        return self
