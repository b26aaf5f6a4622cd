"""Assumption audits on simulated counterfactuals and identification routing."""

from .diagnostics import (
    covariance,
    cross_world_diagnostic,
    direct_effect_assumption_diagnostic,
    mean_difference,
    no_interaction_diagnostic,
    run_audit,
    single_world_diagnostic,
)
from .identification import classify_identification

__all__ = [
    "classify_identification",
    "covariance",
    "cross_world_diagnostic",
    "direct_effect_assumption_diagnostic",
    "mean_difference",
    "no_interaction_diagnostic",
    "run_audit",
    "single_world_diagnostic",
]
