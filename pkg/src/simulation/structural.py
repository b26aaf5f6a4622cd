"""Structural equations for the mediator and the outcome."""

import numpy as np

from ..models.config import ModelConfig


def mediator_index(config: ModelConfig, a, u):
    """alpha0 + alpha1*a + alpha2*(1-a)*u."""
    return config.alpha0 + config.alpha1 * a + config.alpha2 * (1 - a) * u


def outcome_index(config: ModelConfig, a, m, u):
    """beta0 + beta1*a + beta2*m + beta3*a*u + beta4*a*m + beta5*a*m*u."""
    return (
        config.beta0
        + config.beta1 * a
        + config.beta2 * m
        + config.beta3 * a * u
        + config.beta4 * a * m
        + config.beta5 * a * m * u
    )


def mediator_value(config: ModelConfig, a, u, eps_m) -> np.ndarray:
    """M = 1 iff -eps_m < mediator index."""
    return (-np.asarray(eps_m) < mediator_index(config, a, u)).astype(np.int8)


def outcome_value(config: ModelConfig, a, m, u, eps_y) -> np.ndarray:
    """Additive noise for continuous Y; logistic threshold for binary Y."""
    index = outcome_index(config, a, m, u)
    if config.is_binary:
        return (-np.asarray(eps_y) < index).astype(float)
    return np.asarray(index + eps_y, dtype=float)
