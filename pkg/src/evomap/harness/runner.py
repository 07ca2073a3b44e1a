"""Experiment execution: seeding discipline, worker pool, result files.

Seeding
-------
All randomness derives from the configured master seed through spawn keys:

* ``(0, problem_index, run)`` — problem instance (optimum placement and
  rotation, or PUF device and challenges).  The key excludes the mapping and
  algorithm indices on purpose: every mapping/algorithm cell of a given run
  index faces the *same* instance, making comparisons across mappings paired.
* ``(1, problem_index, mapping_index, algorithm_index, run)`` — the
  optimizer's own random stream.
* ``(2, task_index, n_samples)`` — regression datasets.  The key excludes the
  run and the architecture, so every run of every architecture of a task fits
  the same data sample.

Outputs
-------
``runs.csv`` holds one row per run; ``target_hits.csv`` holds one row per
(run, target) pair that was actually reached; ``manifest.json`` echoes the
normalized configuration.  All three are written deterministically so that
re-running a configuration reproduces them byte for byte.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .. import __version__
from ..core import spawn_rng
from ..evolvers import DifferentialEvolution, SteadyStateGA
from ..mappings import mapping_from_code
from ..problems import NetworkRegression, ArbiterPUF, make_benchmark, make_dataset
from ..problems.regression import TASKS
from ..records import TARGETS, RunRecord
from .config import ExperimentConfig, ProblemCell

__all__ = ["run_experiment", "resolve_workers", "RUNS_FILE", "HITS_FILE", "MANIFEST_FILE"]

RUNS_FILE = "runs.csv"
HITS_FILE = "target_hits.csv"
MANIFEST_FILE = "manifest.json"

WORKERS_ENV = "EVOMAP_WORKERS"

RUNS_COLUMNS = ["experiment", "problem", "category", "dimension", "mapping",
                "algorithm", "run", "budget", "evaluations", "best_fitness",
                "optimum", "hit"]
HITS_COLUMNS = ["problem", "mapping", "algorithm", "run", "target_index",
                "target", "evaluations"]


def resolve_workers(explicit=None) -> int:
    """Worker count: explicit argument, else EVOMAP_WORKERS, else 1."""
    if explicit is not None:
        return max(1, int(explicit))
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


def _build_problem(cell: ProblemCell, master_seed: int, p_idx: int, run: int,
                   dataset=None):
    if cell.kind == "benchmark":
        rng = spawn_rng(master_seed, 0, p_idx, run)
        return make_benchmark(cell.params["fid"], cell.dimension, rng)
    if cell.kind == "puf":
        rng = spawn_rng(master_seed, 0, p_idx, run)
        return ArbiterPUF(cell.params["stages"], cell.params["challenges"], rng)
    if cell.kind == "nn":
        inputs, targets = dataset
        return NetworkRegression(cell.params["architecture"], inputs, targets)
    raise ValueError(f"unknown problem kind: {cell.kind!r}")


def _build_algorithm(entry: dict, budget: int, rng):
    entry = dict(entry)
    algo_id = entry.pop("id")
    if algo_id == "ga":
        return SteadyStateGA(budget=budget, seed=rng, **entry)
    if algo_id == "de":
        return DifferentialEvolution(budget=budget, seed=rng, **entry)
    raise ValueError(f"unknown algorithm id: {algo_id!r}")


def _algorithm_label(entry: dict) -> str:
    return str(entry["id"])


def _run_one(job) -> RunRecord:
    (name, master_seed, cell, mapping_code, algo_entry,
     p_idx, m_idx, a_idx, run, dataset) = job
    problem = _build_problem(cell, master_seed, p_idx, run, dataset)
    mapping = mapping_from_code(mapping_code)
    algo_rng = spawn_rng(master_seed, 1, p_idx, m_idx, a_idx, run)
    algorithm = _build_algorithm(algo_entry, cell.budget, algo_rng)
    algorithm.fit(problem, mapping)
    if problem.eval_count != cell.budget:
        raise RuntimeError(
            f"evaluation accounting broken: spent {problem.eval_count} "
            f"of budget {cell.budget} on {cell.label}"
        )
    return RunRecord(
        problem=cell.label,
        category=cell.category,
        dimension=cell.dimension,
        mapping=mapping_code,
        algorithm=_algorithm_label(algo_entry),
        run=run,
        budget=cell.budget,
        evaluations=algorithm.evaluations_,
        best_fitness=algorithm.best_fitness_,
        optimum=problem.optimum_value,
        target_evals=algorithm.target_evals_,
    )


def _jobs(config: ExperimentConfig, datasets: dict):
    for p_idx, cell in enumerate(config.problems):
        dataset = datasets.get(p_idx)
        for m_idx, mapping_code in enumerate(config.mappings):
            for a_idx, algo_entry in enumerate(config.algorithms):
                for run in range(config.runs):
                    yield (config.name, config.master_seed, cell, mapping_code,
                           algo_entry, p_idx, m_idx, a_idx, run, dataset)


def _regression_datasets(config: ExperimentConfig) -> dict:
    """One dataset per regression cell, shared across runs and architectures."""
    datasets = {}
    task_index = {task: i for i, task in enumerate(TASKS)}
    for p_idx, cell in enumerate(config.problems):
        if cell.kind != "nn":
            continue
        task = cell.params["task"]
        samples = cell.params["samples"]
        rng = spawn_rng(config.master_seed, 2, task_index[task], samples)
        datasets[p_idx] = make_dataset(task, samples, rng)
    return datasets


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def run_experiment(config: ExperimentConfig, output_dir, workers=None) -> Path:
    """Run the full experiment grid and write result files into ``output_dir``."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    datasets = _regression_datasets(config)
    jobs = list(_jobs(config, datasets))
    n_workers = resolve_workers(workers)
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            records = list(pool.map(_run_one, jobs))
    else:
        records = [_run_one(job) for job in jobs]

    with open(out / RUNS_FILE, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RUNS_COLUMNS)
        for rec in records:
            writer.writerow([
                config.name, rec.problem, rec.category, rec.dimension,
                rec.mapping, rec.algorithm, rec.run, rec.budget,
                rec.evaluations, _fmt(rec.best_fitness), _fmt(rec.optimum),
                int(rec.hit),
            ])

    with open(out / HITS_FILE, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HITS_COLUMNS)
        for rec in records:
            for t_idx, t_evals in enumerate(rec.target_evals.tolist()):
                if t_evals >= 0:
                    writer.writerow([
                        rec.problem, rec.mapping, rec.algorithm, rec.run,
                        t_idx, _fmt(TARGETS[t_idx]), t_evals,
                    ])

    manifest = {
        "name": config.name,
        "version": __version__,
        "master_seed": config.master_seed,
        "runs": config.runs,
        "mappings": list(config.mappings),
        "algorithms": [dict(entry) for entry in config.algorithms],
        "problems": [
            {
                "index": p_idx,
                "kind": cell.kind,
                "label": cell.label,
                "category": cell.category,
                "dimension": cell.dimension,
                "budget": cell.budget,
                "params": dict(cell.params),
            }
            for p_idx, cell in enumerate(config.problems)
        ],
        "seed_scheme": {
            "instance": "(0, problem_index, run)",
            "algorithm": "(1, problem_index, mapping_index, algorithm_index, run)",
            "dataset": "(2, task_index, n_samples)",
        },
    }
    with open(out / MANIFEST_FILE, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return out
