"""Experiment harness: configuration, execution, and reporting."""

from .config import ExperimentConfig, ProblemCell, load_config
from .runner import run_experiment

__all__ = ["ExperimentConfig", "ProblemCell", "load_config", "run_experiment"]
