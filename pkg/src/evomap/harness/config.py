"""Experiment configuration: YAML schema and normalization.

A configuration names a master seed, a set of problems, the mappings and
algorithms to cross them with, and the number of repeated runs per cell::

    name: demo
    master_seed: 123
    runs: 30
    mappings: [def, exp-s-2, com-seq]
    algorithms:
      - id: ga
      - id: de
    problems:
      - kind: benchmark
        id: sphere            # a function id, a category name, or "all"
        dimension: 2
        budget_factor: 10000  # budget = dimension * budget_factor
      - kind: puf
        stages: 32
        challenges: 2000
        budget: 200000
      - kind: nn
        task: f1
        architecture: [1, 5, 3, 1]
        budget: 100000

Problem entries expand into one cell per concrete function; every cell knows
its dimension and its evaluation budget after loading.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from ..problems.benchmarks import BENCHMARKS, CATEGORIES
from ..problems.regression import DEFAULT_SAMPLES, TASKS, parameter_count

__all__ = ["ProblemCell", "ExperimentConfig", "load_config", "parse_config"]

ALGORITHM_IDS = ("ga", "de")


@dataclass
class ProblemCell:
    """One concrete problem column of the experiment grid."""

    kind: str  # "benchmark" | "puf" | "nn"
    label: str
    category: str
    dimension: int
    budget: int
    params: dict = field(default_factory=dict)


@dataclass
class ExperimentConfig:
    name: str
    master_seed: int
    runs: int
    mappings: list
    algorithms: list
    problems: list


def _expand_benchmark_ids(fid: str) -> list:
    if fid == "all":
        return list(BENCHMARKS)
    if fid in CATEGORIES:
        return [f for f, info in BENCHMARKS.items() if info[0] == fid]
    if fid in BENCHMARKS:
        return [fid]
    raise ValueError(f"unknown benchmark id: {fid!r}")


def _benchmark_cells(entry: dict) -> list:
    dimension = int(entry.get("dimension", 0))
    if dimension < 1:
        raise ValueError("benchmark entries need a positive 'dimension'")
    if "budget" in entry:
        budget = int(entry["budget"])
    elif "budget_factor" in entry:
        budget = dimension * int(entry["budget_factor"])
    else:
        raise ValueError("benchmark entries need 'budget' or 'budget_factor'")
    cells = []
    for fid in _expand_benchmark_ids(str(entry.get("id", "all"))):
        category = BENCHMARKS[fid][0]
        cells.append(ProblemCell("benchmark", fid, category, dimension, budget,
                                 {"fid": fid}))
    return cells


def _puf_cell(entry: dict) -> ProblemCell:
    stages = int(entry["stages"])
    challenges = int(entry["challenges"])
    budget = int(entry["budget"])
    label = f"puf-{stages}-{challenges}"
    return ProblemCell("puf", label, "puf", stages + 1, budget,
                       {"stages": stages, "challenges": challenges})


def _nn_cell(entry: dict) -> ProblemCell:
    task = str(entry["task"])
    if task not in TASKS:
        raise ValueError(f"unknown task: {task!r}")
    architecture = tuple(int(v) for v in entry["architecture"])
    samples = int(entry.get("samples", DEFAULT_SAMPLES))
    budget = int(entry["budget"])
    label = "nn-" + task + "-" + "-".join(str(v) for v in architecture)
    return ProblemCell("nn", label, "nn", parameter_count(architecture), budget,
                       {"task": task, "architecture": list(architecture),
                        "samples": samples})


def parse_config(raw: dict) -> ExperimentConfig:
    """Validate and normalize a parsed YAML document."""
    try:
        master_seed = int(raw["master_seed"])
        problems_raw = raw["problems"]
        mappings = [str(m) for m in raw["mappings"]]
    except KeyError as exc:
        raise ValueError(f"configuration is missing required key: {exc}") from None

    name = str(raw.get("name", "experiment"))
    runs = int(raw.get("runs", 1))
    if runs < 1:
        raise ValueError("'runs' must be at least 1")
    if not mappings:
        raise ValueError("'mappings' must name at least one mapping")

    algorithms = []
    for entry in raw.get("algorithms", [{"id": "ga"}]):
        entry = dict(entry)
        if entry.get("id") not in ALGORITHM_IDS:
            raise ValueError(f"algorithm id must be one of {ALGORITHM_IDS}")
        algorithms.append(entry)

    cells = []
    for entry in problems_raw:
        kind = str(entry.get("kind", "benchmark"))
        if kind == "benchmark":
            cells.extend(_benchmark_cells(entry))
        elif kind == "puf":
            cells.append(_puf_cell(entry))
        elif kind == "nn":
            cells.append(_nn_cell(entry))
        else:
            raise ValueError(f"unknown problem kind: {kind!r}")
    if not cells:
        raise ValueError("configuration defines no problems")

    return ExperimentConfig(name=name, master_seed=master_seed, runs=runs,
                            mappings=mappings, algorithms=algorithms,
                            problems=cells)


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: expected a YAML mapping at the top level")
    return parse_config(raw)
