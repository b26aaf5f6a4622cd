"""Counterfactual and factual data generation."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import get_mc_block_size
from ..models.config import Coupling, ModelConfig, validate_config
from ..models.counterfactuals import (
    CounterfactualBatch,
    CounterfactualUnit,
    ObservedDataset,
    ObservedRow,
)
from ..utils.logging_config import get_logger
from .streams import block_ranges, logistic_draws, make_stream, mix_seed
from .structural import mediator_value, outcome_value

logger = get_logger(__name__)


def outcome_noise(config: ModelConfig, stream: np.random.Generator, size: int) -> np.ndarray:
    """N(0, y_noise_sd) for continuous Y, standard logistic for binary Y."""
    if config.is_binary:
        return logistic_draws(stream, size)
    return stream.normal(0.0, config.y_noise_sd, size)


def sample_units(config: ModelConfig, n: int, stream: np.random.Generator) -> CounterfactualBatch:
    """Draw n units with their complete counterfactual tables.

    Draw order is fixed: U, eps_M, eps_Y, then (independent_redraw only) the
    extra mediator draw for M(1) and the extra outcome draws for Y(0,1),
    Y(1,0), Y(1,1).

    Args:
        config: Validated model configuration.
        n: Number of units.
        stream: Random stream; advanced in place.

    Returns:
        CounterfactualBatch of n units.
    """
    u = stream.normal(config.u_mean, config.u_sd, n)
    eps_m = logistic_draws(stream, n)
    eps_y = outcome_noise(config, stream, n)

    if config.coupling == Coupling.SHARED_NOISE:
        eps_m1 = eps_m
        eps_cells = {(a, m): eps_y for a in (0, 1) for m in (0, 1)}
    else:
        eps_m1 = logistic_draws(stream, n)
        eps_cells = {(0, 0): eps_y}
        for cell in ((0, 1), (1, 0), (1, 1)):
            eps_cells[cell] = outcome_noise(config, stream, n)

    m0 = mediator_value(config, 0, u, eps_m)
    m1 = mediator_value(config, 1, u, eps_m1)
    y = np.empty((n, 2, 2), dtype=float)
    for (a, m), eps in eps_cells.items():
        y[:, a, m] = outcome_value(config, a, m, u, eps)

    return CounterfactualBatch(
        outcome_kind=config.outcome_kind, u=u, eps_m=eps_m, eps_y=eps_y, m0=m0, m1=m1, y=y
    )


def sample_unit(config: ModelConfig, stream: np.random.Generator) -> CounterfactualUnit:
    return sample_units(config, 1, stream).unit(0)


def compose_nested(unit: CounterfactualUnit, a: int, a_prime: int) -> float:
    """Y(a, M(a')) = y_am[a, m_a']."""
    return unit.nested(a, a_prime)


def project_factual(unit: CounterfactualUnit, a: int) -> ObservedRow:
    """Factual row under assignment a, by consistency."""
    m = unit.mediator(a)
    return ObservedRow(a=a, m=m, y=unit.y_am[a][m])


def draw_assignments(stream: np.random.Generator, n: int, p_treated: float = 0.5) -> np.ndarray:
    """Randomized treatment, independent of the units."""
    return (stream.random(n) < p_treated).astype(np.int8)


def block_stream(seed: int, block_index: int) -> np.random.Generator:
    """Stream for one Monte Carlo block."""
    return make_stream(mix_seed(seed, block_index))


def concat_batches(batches: list[CounterfactualBatch]) -> CounterfactualBatch:
    if len(batches) == 1:
        return batches[0]
    return CounterfactualBatch(
        outcome_kind=batches[0].outcome_kind,
        u=np.concatenate([b.u for b in batches]),
        eps_m=np.concatenate([b.eps_m for b in batches]),
        eps_y=np.concatenate([b.eps_y for b in batches]),
        m0=np.concatenate([b.m0 for b in batches]),
        m1=np.concatenate([b.m1 for b in batches]),
        y=np.concatenate([b.y for b in batches]),
    )


def simulate_units(
    config: ModelConfig, n: int, seed: int, block_size: Optional[int] = None
) -> CounterfactualBatch:
    """n units generated block by block from per-block substreams."""
    config = validate_config(config)
    batches = [
        sample_units(config, stop - start, block_stream(seed, b))
        for b, (start, stop) in enumerate(block_ranges(n, block_size or get_mc_block_size()))
    ]
    return concat_batches(batches)


@dataclass(frozen=True)
class SimulatedData:
    """Factual rows and the counterfactual units they were projected from."""

    observed: ObservedDataset
    counterfactuals: CounterfactualBatch
    assignments: np.ndarray


def simulate_observed(
    config: ModelConfig,
    n: int,
    seed: int,
    p_treated: float = 0.5,
    block_size: Optional[int] = None,
) -> SimulatedData:
    """Simulate a randomized study: units, A ~ Bernoulli(p_treated), factual rows.

    Each block draws its units first and then its assignments from the same
    substream, so the units match those of simulate_units for the same seed.
    """
    config = validate_config(config)
    batches, assignments = [], []
    for b, (start, stop) in enumerate(block_ranges(n, block_size or get_mc_block_size())):
        stream = block_stream(seed, b)
        batches.append(sample_units(config, stop - start, stream))
        assignments.append(draw_assignments(stream, stop - start, p_treated))
    units = concat_batches(batches)
    a = np.concatenate(assignments)
    logger.debug("simulated_observed", n=n, seed=seed, treated=int(a.sum()))
    return SimulatedData(observed=units.project(a), counterfactuals=units, assignments=a)
