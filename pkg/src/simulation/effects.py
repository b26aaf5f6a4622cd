"""Monte Carlo evaluation of natural, interventional and separable effects.

Units are generated in fixed-size blocks, each from its own substream
derived from (seed, block index). Per-block moments are merged in block
order, so results do not depend on the number of workers.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from joblib import Parallel, delayed

from ..config import JOBS, get_mc_block_size
from ..models.config import ModelConfig, validate_config
from ..models.counterfactuals import CounterfactualBatch
from ..models.errors import InvalidInput, NonFinite
from ..models.estimates import (
    EffectEstimates,
    EstimationMethod,
    InterventionalEffects,
    SeparableEffects,
)
from ..utils.logging_config import get_logger
from .sampling import block_stream, sample_units
from .streams import block_ranges
from .structural import mediator_value, outcome_value

logger = get_logger(__name__)


@dataclass(frozen=True)
class Moments:
    """Count, column means and centred sums of squares of per-unit values."""

    n: int
    mean: np.ndarray
    m2: np.ndarray

    @classmethod
    def of(cls, columns: np.ndarray) -> "Moments":
        columns = np.atleast_2d(np.asarray(columns, dtype=float))
        mean = columns.mean(axis=0)
        return cls(n=columns.shape[0], mean=mean, m2=((columns - mean) ** 2).sum(axis=0))

    def merge(self, other: "Moments") -> "Moments":
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.n / n)
        m2 = self.m2 + other.m2 + delta**2 * (self.n * other.n / n)
        return Moments(n=n, mean=mean, m2=m2)

    @property
    def std_error(self) -> np.ndarray:
        if self.n < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.n - 1) / self.n)


def reduce_moments(parts: list[Moments]) -> Moments:
    """Merge in list order."""
    total = parts[0]
    for part in parts[1:]:
        total = total.merge(part)
    return total


def run_blocks(
    config: ModelConfig,
    n: int,
    seed: int,
    columns: Callable[[CounterfactualBatch, np.random.Generator], np.ndarray],
    jobs: Optional[int] = None,
    block_size: Optional[int] = None,
) -> Moments:
    """Evaluate per-unit columns block by block and reduce their moments.

    Args:
        config: Model configuration.
        n: Total number of units.
        seed: Base seed; block b uses the substream mix_seed(seed, b).
        columns: Maps (units, stream) to an (size, k) array. The stream is the
            block stream, positioned after the units were drawn.
        jobs: Worker threads; defaults to CWMED_JOBS.
        block_size: Units per block; defaults to CWMED_MC_BLOCK_SIZE.

    Returns:
        Moments of the k columns over all n units.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    config = validate_config(config)
    ranges = block_ranges(n, block_size or get_mc_block_size())

    def one_block(b: int, size: int) -> Moments:
        stream = block_stream(seed, b)
        units = sample_units(config, size, stream)
        return Moments.of(columns(units, stream))

    jobs = jobs or JOBS
    if jobs == 1 or len(ranges) == 1:
        parts = [one_block(b, stop - start) for b, (start, stop) in enumerate(ranges)]
    else:
        parts = Parallel(n_jobs=jobs, prefer="threads")(
            delayed(one_block)(b, stop - start) for b, (start, stop) in enumerate(ranges)
        )
    total = reduce_moments(parts)
    if not np.all(np.isfinite(total.mean)):
        raise NonFinite("Monte Carlo means are not finite")
    logger.debug("mc_blocks_done", n=n, blocks=len(ranges), jobs=jobs)
    return total


def _natural_columns(units: CounterfactualBatch, _stream: np.random.Generator) -> np.ndarray:
    y00 = units.nested(0, 0)
    y10 = units.nested(1, 0)
    y11 = units.nested(1, 1)
    return np.column_stack([y00, y10, y11, y10 - y00, y11 - y10, y11 - y00])


def mc_true_effects(
    config: ModelConfig,
    n: int,
    seed: int,
    jobs: Optional[int] = None,
    block_size: Optional[int] = None,
) -> EffectEstimates:
    """Monte Carlo NDE, NIE and TE from nested counterfactuals.

    NDE = mean[Y(1,M(0)) - Y(0,M(0))], NIE = mean[Y(1,M(1)) - Y(1,M(0))].
    """
    moments = run_blocks(config, n, seed, _natural_columns, jobs, block_size)
    ey00, ey10, ey11 = (float(v) for v in moments.mean[:3])
    se = moments.std_error
    return EffectEstimates.from_means(
        ey_control=ey00,
        ey_nested=ey10,
        ey_treated=ey11,
        method=EstimationMethod.MC_TRUTH,
        n_or_nodes=n,
        mc_se=float(se[3]),
        mc_se_nie=float(se[4]),
        mc_se_te=float(se[5]),
    )


def mc_mediator_probabilities(
    config: ModelConfig, n: int, seed: int, jobs: Optional[int] = None, block_size: Optional[int] = None
) -> tuple[float, float]:
    """P(M(0) = 1) and P(M(1) = 1) estimated from n units."""
    moments = run_blocks(
        config,
        n,
        seed,
        lambda units, _s: np.column_stack([units.m0, units.m1]),
        jobs,
        block_size,
    )
    return float(moments.mean[0]), float(moments.mean[1])


def mc_interventional_effects(
    config: ModelConfig,
    n: int,
    seed: int,
    jobs: Optional[int] = None,
    block_size: Optional[int] = None,
) -> InterventionalEffects:
    """Standardized and organic effects with M drawn from the law of M(a').

    A first pass estimates p_a = P(M(a) = 1). The second pass regenerates the
    same units and draws M* ~ Bernoulli(p_a') from the block stream,
    independently of each unit, then evaluates Y(a, M*).
    """
    p_m1 = mc_mediator_probabilities(config, n, seed, jobs, block_size)
    p = np.asarray(p_m1)

    def columns(units: CounterfactualBatch, stream: np.random.Generator) -> np.ndarray:
        size = len(units)
        rows = np.arange(size)
        m_star = (stream.random((size, 2)) < p).astype(np.int8)
        r = {
            (a, ap): units.y[rows, a, m_star[:, ap]] for a in (0, 1) for ap in (0, 1)
        }
        f0 = units.nested(0, 0)
        f1 = units.nested(1, 1)
        return np.column_stack(
            [
                r[0, 0],
                r[0, 1],
                r[1, 0],
                r[1, 1],
                f0,
                f1,
                r[1, 0] - r[0, 0],
                r[0, 0] - f0,
                r[1, 1] - f1,
            ]
        )

    moments = run_blocks(config, n, seed, columns, jobs, block_size)
    mean = [float(v) for v in moments.mean]
    se = moments.std_error
    r00, r01, r10, r11, f0, f1 = mean[:6]
    return InterventionalEffects(
        de_st=r10 - r00,
        ie_st=r11 - r10,
        de_org=r10 - f0,
        ie_org=f1 - r10,
        te=f1 - f0,
        te_check=(mean[7], mean[8]),
        te_check_se=(float(se[7]), float(se[8])),
        ey_random=((r00, r01), (r10, r11)),
        ey_factual=(f0, f1),
        p_m1=(float(p[0]), float(p[1])),
        mc_se=float(se[6]),
        n=n,
    )


def _separable_columns(config: ModelConfig):
    def columns(units: CounterfactualBatch, _stream: np.random.Generator) -> np.ndarray:
        out = []
        for a_y in (0, 1):
            for a_m in (0, 1):
                m = mediator_value(config, a_m, units.u, units.eps_m)
                out.append(outcome_value(config, a_y, m, units.u, units.eps_y))
        return np.column_stack(out)

    return columns


def separable_decomposition(
    config: ModelConfig,
    n: int,
    seed: int,
    jobs: Optional[int] = None,
    block_size: Optional[int] = None,
) -> SeparableEffects:
    """DE_sep, IE_sep and TE from the four component interventions on shared draws.

    DE_sep = E{Y(A^Y=1, A^M=0)} - E{Y(A^Y=0, A^M=0)}
    IE_sep = E{Y(A^Y=1, A^M=1)} - E{Y(A^Y=1, A^M=0)}
    """
    config = validate_config(config)
    moments = run_blocks(config, n, seed, _separable_columns(config), jobs, block_size)
    e00, e01, e10, e11 = (float(v) for v in moments.mean)
    de = e10 - e00
    ie = e11 - e10
    return SeparableEffects(
        de_sep=de,
        ie_sep=ie,
        te=e11 - e00,
        ey_components=((e00, e01), (e10, e11)),
        n=n,
    )


def mc_separable_effects(
    config: ModelConfig,
    a_y: int,
    a_m: int,
    n: int,
    seed: int,
    jobs: Optional[int] = None,
    block_size: Optional[int] = None,
) -> float:
    """E{Y(A^Y=a_y, A^M=a_m)}: mediator equation at a_m, outcome equation at a_y."""
    if a_y not in (0, 1) or a_m not in (0, 1):
        raise InvalidInput("a_y and a_m must be 0 or 1")
    return separable_decomposition(config, n, seed, jobs, block_size).ey_components[a_y][a_m]
