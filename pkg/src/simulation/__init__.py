"""Counterfactual simulation from the structural mediator and outcome models."""

from .effects import (
    Moments,
    mc_interventional_effects,
    mc_mediator_probabilities,
    mc_separable_effects,
    mc_true_effects,
    run_blocks,
    separable_decomposition,
)
from .sampling import (
    SimulatedData,
    compose_nested,
    draw_assignments,
    project_factual,
    sample_unit,
    sample_units,
    simulate_observed,
    simulate_units,
)
from .streams import logistic_draws, make_stream, mix_seed

__all__ = [
    "Moments",
    "SimulatedData",
    "compose_nested",
    "draw_assignments",
    "logistic_draws",
    "make_stream",
    "mc_interventional_effects",
    "mc_mediator_probabilities",
    "mc_separable_effects",
    "mc_true_effects",
    "mix_seed",
    "project_factual",
    "run_blocks",
    "sample_unit",
    "sample_units",
    "separable_decomposition",
    "simulate_observed",
    "simulate_units",
]
