"""Cascading-failure onset-time classification toolkit (C++ core)."""

from ._core import (
    GridCase,
    Model,
    __version__,
    accuracy,
    confusion_matrix,
    contingency_features,
    detect_onset,
    expected_improvement,
    gp_posterior,
    label_onset,
    load_grid_case,
    parse_grid_case,
    run_cascade,
    run_cli,
    solve_dc_power_flow,
    train_model,
)

__all__ = [
    "GridCase",
    "Model",
    "__version__",
    "accuracy",
    "confusion_matrix",
    "contingency_features",
    "detect_onset",
    "expected_improvement",
    "gp_posterior",
    "label_onset",
    "load_grid_case",
    "parse_grid_case",
    "run_cascade",
    "run_cli",
    "solve_dc_power_flow",
    "train_model",
]
