"""Result-file readers and report builders (comparison tables, ECDF curves)."""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import numpy as np

from ..problems.benchmarks import CATEGORIES
from ..records import N_TARGETS
from ..stats import verdict
from .runner import HITS_FILE, RUNS_FILE

__all__ = ["load_runs", "load_hits", "benchmark_table", "modeling_table",
           "ecdf_table", "write_csv"]

BASELINE_MAPPING = "def"


def load_runs(results_dir) -> list:
    with open(Path(results_dir) / RUNS_FILE, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def load_hits(results_dir) -> list:
    with open(Path(results_dir) / HITS_FILE, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _ordered_unique(values) -> list:
    seen = {}
    for v in values:
        seen.setdefault(v, None)
    return list(seen)


def _grouped(rows):
    """Rows keyed by (problem, algorithm) then mapping, preserving file order."""
    problems = _ordered_unique(r["problem"] for r in rows)
    algorithms = _ordered_unique(r["algorithm"] for r in rows)
    mappings = _ordered_unique(r["mapping"] for r in rows)
    if BASELINE_MAPPING in mappings:
        mappings.remove(BASELINE_MAPPING)
        mappings.insert(0, BASELINE_MAPPING)
    index = {}
    for r in rows:
        index.setdefault((r["problem"], r["algorithm"], r["mapping"]), []).append(r)
    return problems, algorithms, mappings, index


def _verdict_against_baseline(samples, baseline, mapping):
    if mapping == BASELINE_MAPPING or baseline is None:
        return ""
    return verdict(samples, baseline)


def benchmark_table(rows) -> tuple:
    """Median optimality gap, hit count, and verdict versus the baseline.

    Consumes only rows of problems with a known optimum.
    """
    rows = [r for r in rows if r["category"] in CATEGORIES and r["optimum"] != ""]
    problems, algorithms, mappings, index = _grouped(rows)
    header = ["problem", "algorithm", "mapping", "runs", "median_gap", "hits", "verdict"]
    out = []
    for problem in problems:
        for algorithm in algorithms:
            cells = {}
            for mapping in mappings:
                group = index.get((problem, algorithm, mapping))
                if group:
                    gaps = np.array([float(r["best_fitness"]) - float(r["optimum"])
                                     for r in group])
                    cells[mapping] = (gaps, sum(int(r["hit"]) for r in group))
            baseline = cells.get(BASELINE_MAPPING, (None, 0))[0]
            for mapping in mappings:
                if mapping not in cells:
                    continue
                gaps, hits = cells[mapping]
                out.append([
                    problem, algorithm, mapping, len(gaps),
                    f"{np.median(gaps):.4g}", hits,
                    _verdict_against_baseline(gaps, baseline, mapping),
                ])
    return header, out


def modeling_table(rows) -> tuple:
    """Median and sample deviation of final fitness, with verdicts.

    Consumes the model-fitting rows (device modeling and regression), where
    fitness is meaningful on its own rather than as a gap.
    """
    rows = [r for r in rows if r["category"] not in CATEGORIES]
    problems, algorithms, mappings, index = _grouped(rows)
    header = ["problem", "algorithm", "mapping", "runs", "median", "std", "verdict"]
    out = []
    for problem in problems:
        for algorithm in algorithms:
            cells = {}
            for mapping in mappings:
                group = index.get((problem, algorithm, mapping))
                if group:
                    cells[mapping] = np.array([float(r["best_fitness"]) for r in group])
            baseline = cells.get(BASELINE_MAPPING)
            for mapping in mappings:
                if mapping not in cells:
                    continue
                values = cells[mapping]
                spread = np.std(values, ddof=1) if values.size > 1 else 0.0
                out.append([
                    problem, algorithm, mapping, len(values),
                    f"{np.median(values):.4g}", f"{spread:.4g}",
                    _verdict_against_baseline(values, baseline, mapping),
                ])
    return header, out


def ecdf_table(runs_rows, hits_rows, group: str) -> tuple:
    """Pooled ECDF of target achievements, one curve per (mapping, algorithm).

    ``group`` is a problem category, ``"puf"``, or ``"all"`` (every problem
    with a known optimum).  The fraction at an evaluation count is the share
    of all (run, target) pairs achieved within that many evaluations.
    """
    valid = set(CATEGORIES) | {"puf", "all"}
    if group not in valid:
        raise ValueError(f"unknown group {group!r}; choose from {sorted(valid)}")

    def selected(row):
        if row.get("optimum", "x") == "":
            return False
        return group == "all" or row["category"] == group

    runs_selected = [r for r in runs_rows if selected(r)]
    problems = {r["problem"] for r in runs_selected}
    run_totals = {}
    for r in runs_selected:
        key = (r["mapping"], r["algorithm"])
        run_totals[key] = run_totals.get(key, 0) + 1

    events = {}
    for r in hits_rows:
        if r["problem"] in problems:
            key = (r["mapping"], r["algorithm"])
            events.setdefault(key, []).append(int(r["evaluations"]))

    mappings = _ordered_unique(r["mapping"] for r in runs_selected)
    algorithms = _ordered_unique(r["algorithm"] for r in runs_selected)
    header = ["mapping", "algorithm", "evaluations", "fraction"]
    out = []
    for mapping in mappings:
        for algorithm in algorithms:
            key = (mapping, algorithm)
            total = run_totals.get(key, 0) * N_TARGETS
            if total == 0:
                continue
            xs, counts = np.unique(np.array(events.get(key, []), dtype=np.int64),
                                   return_counts=True)
            running = 0
            for x, c in zip(xs.tolist(), counts.tolist()):
                running += c
                out.append([mapping, algorithm, x, repr(running / total)])
    return header, out


def write_csv(header, rows, destination=None):
    """Write a table as CSV to a file path or to standard output."""
    if destination is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        with open(destination, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
