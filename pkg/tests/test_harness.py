"""Harness: configuration parsing, reproducible execution, CLI round trips."""

import csv
import json
import os
from pathlib import Path

import numpy as np
import pytest
import yaml

from evomap.harness.cli import main
from evomap.harness.config import load_config, parse_config
from evomap.harness.runner import (
    _build_problem,
    resolve_workers,
    run_experiment,
)
from evomap.harness.config import ProblemCell

TINY_CONFIG = {
    "name": "tiny",
    "master_seed": 2024,
    "runs": 2,
    "mappings": ["def", "com-seq"],
    "algorithms": [{"id": "ga"}, {"id": "de"}],
    "problems": [
        {"kind": "benchmark", "id": "sphere", "dimension": 2, "budget": 300},
        {"kind": "puf", "stages": 8, "challenges": 50, "budget": 250},
        {"kind": "nn", "task": "f1", "architecture": [1, 2, 2, 1],
         "budget": 200, "samples": 40},
    ],
}


def write_config(tmp_path, doc=TINY_CONFIG, name="exp.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(doc), encoding="utf-8")
    return path


# --- configuration ---------------------------------------------------------

def test_load_and_expand_single_function(tmp_path):
    config = load_config(write_config(tmp_path))
    assert config.name == "tiny"
    assert [c.label for c in config.problems] == ["sphere", "puf-8-50",
                                                  "nn-f1-1-2-2-1"]
    assert [c.dimension for c in config.problems] == [2, 9, 13]
    assert [c.budget for c in config.problems] == [300, 250, 200]
    assert config.problems[0].category == "separable"


def test_expand_all_and_category():
    raw = dict(TINY_CONFIG, problems=[
        {"kind": "benchmark", "id": "all", "dimension": 3, "budget_factor": 100},
    ])
    config = parse_config(raw)
    assert len(config.problems) == 10
    assert all(c.budget == 300 for c in config.problems)

    raw = dict(TINY_CONFIG, problems=[
        {"kind": "benchmark", "id": "multimodal-adequate", "dimension": 2,
         "budget": 99},
    ])
    config = parse_config(raw)
    assert [c.label for c in config.problems] == ["rastrigin-rot", "schaffers-f7"]


def test_config_errors():
    with pytest.raises(ValueError):
        parse_config({"master_seed": 1, "mappings": ["def"], "problems": []})
    with pytest.raises(ValueError):
        parse_config(dict(TINY_CONFIG, mappings=[]))
    with pytest.raises(ValueError):
        parse_config(dict(TINY_CONFIG, algorithms=[{"id": "annealing"}]))
    with pytest.raises(ValueError):
        parse_config(dict(TINY_CONFIG, problems=[
            {"kind": "benchmark", "id": "sphere", "dimension": 2},
        ]))  # no budget
    with pytest.raises(ValueError):
        parse_config(dict(TINY_CONFIG, problems=[{"kind": "quantum"}]))


# --- execution -------------------------------------------------------------

def read_bytes(directory):
    return {name: (Path(directory) / name).read_bytes()
            for name in ("runs.csv", "target_hits.csv", "manifest.json")}


def test_run_is_byte_reproducible(tmp_path):
    config = load_config(write_config(tmp_path))
    out1 = run_experiment(config, tmp_path / "r1")
    out2 = run_experiment(config, tmp_path / "r2")
    assert read_bytes(out1) == read_bytes(out2)


def test_parallel_run_matches_serial(tmp_path):
    config = load_config(write_config(tmp_path))
    serial = run_experiment(config, tmp_path / "serial", workers=1)
    parallel = run_experiment(config, tmp_path / "parallel", workers=2)
    assert read_bytes(serial) == read_bytes(parallel)


def test_workers_env_variable(monkeypatch):
    monkeypatch.delenv("EVOMAP_WORKERS", raising=False)
    assert resolve_workers() == 1
    monkeypatch.setenv("EVOMAP_WORKERS", "3")
    assert resolve_workers() == 3
    assert resolve_workers(2) == 2


def test_run_rows_and_accounting(tmp_path):
    config = load_config(write_config(tmp_path))
    out = run_experiment(config, tmp_path / "out")
    with open(out / "runs.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    # cells = problems x mappings x algorithms, each with `runs` rows
    assert len(rows) == 3 * 2 * 2 * 2
    for row in rows:
        assert int(row["evaluations"]) == int(row["budget"])
        assert row["hit"] in ("0", "1")
    # Regression rows have no optimum and never count hits.
    nn_rows = [r for r in rows if r["problem"].startswith("nn-")]
    assert nn_rows and all(r["optimum"] == "" and r["hit"] == "0" for r in nn_rows)

    with open(out / "manifest.json", encoding="utf-8") as fh:
        manifest = json.load(fh)
    assert manifest["master_seed"] == 2024
    assert len(manifest["problems"]) == 3


def test_instances_paired_across_mappings():
    cell = ProblemCell("benchmark", "sphere", "separable", 2, 300, {"fid": "sphere"})
    a = _build_problem(cell, 99, 0, run=1)
    b = _build_problem(cell, 99, 0, run=1)
    c = _build_problem(cell, 99, 0, run=2)
    assert np.array_equal(a.x_opt, b.x_opt)
    assert not np.array_equal(a.x_opt, c.x_opt)

    puf_cell = ProblemCell("puf", "puf-8-50", "puf", 9, 250,
                           {"stages": 8, "challenges": 50})
    p1 = _build_problem(puf_cell, 99, 1, run=0)
    p2 = _build_problem(puf_cell, 99, 1, run=0)
    assert np.array_equal(p1.hidden_weights, p2.hidden_weights)
    assert np.array_equal(p1.challenges, p2.challenges)


# --- CLI -------------------------------------------------------------------

def test_cli_run_table_ecdf_seed_info(tmp_path, capsys):
    config_path = write_config(tmp_path)
    out_dir = tmp_path / "results"
    assert main(["run", str(config_path), "--output", str(out_dir)]) == 0
    capsys.readouterr()

    assert main(["table", str(out_dir)]) == 0
    table_text = capsys.readouterr().out
    header = table_text.splitlines()[0].split(",")
    assert header == ["problem", "algorithm", "mapping", "runs", "median_gap",
                      "hits", "verdict"]
    assert "sphere" in table_text and "nn-f1" not in table_text

    table_file = tmp_path / "pm.csv"
    assert main(["table", str(out_dir), "--mode", "pm", "--output",
                 str(table_file)]) == 0
    pm_text = table_file.read_text()
    assert "puf-8-50" in pm_text and "nn-f1-1-2-2-1" in pm_text
    assert "sphere" not in pm_text

    assert main(["ecdf", str(out_dir), "--group", "separable"]) == 0
    ecdf_text = capsys.readouterr().out
    lines = ecdf_text.strip().splitlines()
    assert lines[0].split(",") == ["mapping", "algorithm", "evaluations",
                                   "fraction"]
    fractions = {}
    for line in lines[1:]:
        mapping, algorithm, evals, fraction = line.split(",")
        key = (mapping, algorithm)
        value = float(fraction)
        assert 0.0 < value <= 1.0
        assert fractions.get(key, 0.0) < value
        fractions[key] = value

    assert main(["seed-info", str(out_dir)]) == 0
    seed_text = capsys.readouterr().out
    assert "master_seed: 2024" in seed_text
    assert "(1, problem_index, mapping_index, algorithm_index, run)" in seed_text


def test_cli_ecdf_rejects_unknown_group(tmp_path):
    config_path = write_config(tmp_path)
    out_dir = tmp_path / "results"
    main(["run", str(config_path), "--output", str(out_dir)])
    with pytest.raises(ValueError):
        main(["ecdf", str(out_dir), "--group", "nonsense"])


def test_cli_default_output_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    config_path = write_config(tmp_path, name="demo.yaml")
    assert main(["run", str(config_path)]) == 0
    capsys.readouterr()
    assert (tmp_path / "demo-results" / "runs.csv").exists()
