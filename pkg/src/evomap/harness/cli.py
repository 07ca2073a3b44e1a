"""Command-line interface for running experiments and reporting results."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import load_config
from .runner import MANIFEST_FILE, run_experiment
from .tables import (
    benchmark_table,
    ecdf_table,
    load_hits,
    load_runs,
    modeling_table,
    write_csv,
)

__all__ = ["main"]


def _cmd_run(args) -> int:
    config = load_config(args.config)
    output = args.output or f"{Path(args.config).stem}-results"
    out = run_experiment(config, output, workers=args.workers)
    cells = len(config.problems) * len(config.mappings) * len(config.algorithms)
    print(f"{config.name}: {cells} cells x {config.runs} runs -> {out}")
    return 0


def _cmd_table(args) -> int:
    rows = load_runs(args.results)
    if args.mode == "benchmark":
        header, table = benchmark_table(rows)
    else:
        header, table = modeling_table(rows)
    write_csv(header, table, args.output)
    return 0


def _cmd_ecdf(args) -> int:
    header, table = ecdf_table(load_runs(args.results), load_hits(args.results),
                               args.group)
    write_csv(header, table, args.output)
    return 0


def _cmd_seed_info(args) -> int:
    with open(Path(args.results) / MANIFEST_FILE, encoding="utf-8") as fh:
        manifest = json.load(fh)
    print(f"master_seed: {manifest['master_seed']}")
    print("spawn keys (applied to the master seed):")
    for role, key in sorted(manifest["seed_scheme"].items()):
        print(f"  {role}: {key}")
    print("problems:")
    for cell in manifest["problems"]:
        print(f"  [{cell['index']}] {cell['label']} "
              f"(dimension {cell['dimension']}, budget {cell['budget']})")
    print(f"mappings: {', '.join(manifest['mappings'])}")
    algos = ", ".join(entry["id"] for entry in manifest["algorithms"])
    print(f"algorithms: {algos}")
    print(f"runs per cell: {manifest['runs']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evomap",
        description="Run mapping-comparison experiments and report results.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run all cells of a configuration")
    p_run.add_argument("config", help="YAML experiment configuration")
    p_run.add_argument("--output", help="results directory "
                       "(default: <config stem>-results)")
    p_run.add_argument("--workers", type=int, default=None,
                       help="parallel processes (default: $EVOMAP_WORKERS or 1)")
    p_run.set_defaults(fn=_cmd_run)

    p_table = sub.add_parser("table", help="summary table from a results directory")
    p_table.add_argument("results", help="directory written by 'run'")
    p_table.add_argument("--mode", choices=("benchmark", "pm"), default="benchmark",
                         help="'benchmark': median gap and hits; "
                              "'pm': median and spread of model fitness")
    p_table.add_argument("--output", help="write CSV here instead of stdout")
    p_table.set_defaults(fn=_cmd_table)

    p_ecdf = sub.add_parser("ecdf", help="pooled target-achievement curve")
    p_ecdf.add_argument("results", help="directory written by 'run'")
    p_ecdf.add_argument("--group", required=True,
                        help="problem category, 'puf', or 'all'")
    p_ecdf.add_argument("--output", help="write CSV here instead of stdout")
    p_ecdf.set_defaults(fn=_cmd_ecdf)

    p_seed = sub.add_parser("seed-info", help="show the seed derivation scheme")
    p_seed.add_argument("results", help="directory written by 'run'")
    p_seed.set_defaults(fn=_cmd_seed_info)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
