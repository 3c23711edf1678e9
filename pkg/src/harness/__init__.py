"""Experiment harness: the bodies behind each CLI command."""

from .ablation import ablation, run_ablation
from .runs import (
    run_eval,
    run_export_vectors,
    run_gen,
    run_train_stage1,
    run_train_stage2,
    run_verify,
)
from .sweep import default_values, run_sweep, sweep

__all__ = [
    "ablation",
    "default_values",
    "run_ablation",
    "run_eval",
    "run_export_vectors",
    "run_gen",
    "run_sweep",
    "run_train_stage1",
    "run_train_stage2",
    "run_verify",
    "sweep",
]
