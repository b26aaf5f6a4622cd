"""One-pass simulation study: truth, factual data, g-formula estimate and bias."""

from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict

from ..config import JOBS, get_mc_block_size
from ..models.config import ModelConfig, validate_config
from ..models.errors import InvalidInput
from ..models.estimates import CellStats, EffectEstimates, EstimationMethod
from ..simulation.effects import Moments, reduce_moments
from ..simulation.sampling import block_stream, draw_assignments, sample_units
from ..simulation.streams import block_ranges
from ..utils.logging_config import get_logger
from .gformula import cell_sums, gformula_from_cells

logger = get_logger(__name__)


class GformulaStudy(BaseModel):
    """Monte Carlo truth and g-formula estimate computed on the same units."""

    model_config = ConfigDict(frozen=True)

    truth: EffectEstimates
    estimate: EffectEstimates
    cells: CellStats
    bias_nde: float
    bias_nie: float
    n: int


def mc_gformula_study(
    config: ModelConfig,
    n: int,
    seed: int,
    p_treated: float = 0.5,
    jobs: Optional[int] = None,
    block_size: Optional[int] = None,
) -> GformulaStudy:
    """Generate units, assign A, project factual rows and compare truth with the estimate.

    The units for a given seed are the same as those used by mc_true_effects,
    so the truth part matches it exactly.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    config = validate_config(config)
    ranges = block_ranges(n, block_size or get_mc_block_size())

    def one_block(b: int, size: int) -> tuple[Moments, np.ndarray, np.ndarray]:
        stream = block_stream(seed, b)
        units = sample_units(config, size, stream)
        a = draw_assignments(stream, size, p_treated)
        y00, y10, y11 = units.nested(0, 0), units.nested(1, 0), units.nested(1, 1)
        moments = Moments.of(np.column_stack([y00, y10, y11, y10 - y00, y11 - y10, y11 - y00]))
        counts, sums = cell_sums(units.project(a))
        return moments, counts, sums

    jobs = jobs or JOBS
    if jobs == 1 or len(ranges) == 1:
        parts = [one_block(b, stop - start) for b, (start, stop) in enumerate(ranges)]
    else:
        parts = Parallel(n_jobs=jobs, prefer="threads")(
            delayed(one_block)(b, stop - start) for b, (start, stop) in enumerate(ranges)
        )

    moments = reduce_moments([p[0] for p in parts])
    counts = sum((p[1] for p in parts), np.zeros((2, 2), dtype=np.int64))
    sums = np.zeros((2, 2))
    for p in parts:
        sums = sums + p[2]

    se = moments.std_error
    truth = EffectEstimates.from_means(
        ey_control=float(moments.mean[0]),
        ey_nested=float(moments.mean[1]),
        ey_treated=float(moments.mean[2]),
        method=EstimationMethod.MC_TRUTH,
        n_or_nodes=n,
        mc_se=float(se[3]),
        mc_se_nie=float(se[4]),
        mc_se_te=float(se[5]),
    )
    cells = CellStats.from_sums(counts, sums)
    estimate = gformula_from_cells(cells, n)
    logger.debug("gformula_study_done", n=n, seed=seed, counts=cells.counts)
    return GformulaStudy(
        truth=truth,
        estimate=estimate,
        cells=cells,
        bias_nde=truth.nde - estimate.nde,
        bias_nie=truth.nie - estimate.nie,
        n=n,
    )
