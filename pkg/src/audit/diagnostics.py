"""Diagnostics for the identification assumptions on simulated counterfactuals.

All statistics are descriptive associations with Monte Carlo standard errors.
They are computed from counterfactual columns that only a simulation can
provide; none of them is estimable from factual data.
"""

from typing import Optional, Sequence

import numpy as np

from ..models.audit import DEFAULT_THRESHOLD, AuditReport, DiagnosticStatistic
from ..models.config import ModelConfig
from ..models.counterfactuals import CounterfactualBatch, CounterfactualUnit
from ..models.errors import DegenerateStratum, InvalidInput
from ..simulation.sampling import simulate_observed
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

Units = CounterfactualBatch | Sequence[CounterfactualUnit]


def _as_batch(units: Units) -> CounterfactualBatch:
    if isinstance(units, CounterfactualBatch):
        return units
    return CounterfactualBatch.from_units(list(units))


def _require(batch: CounterfactualBatch, minimum: int = 2) -> None:
    if len(batch) < minimum:
        raise InvalidInput(f"diagnostics need at least {minimum} units, got {len(batch)}")


def _varies(values: np.ndarray) -> bool:
    return values.size > 1 and bool(np.ptp(values) > 0)


def mean_difference(x: np.ndarray, group: np.ndarray) -> tuple[float, float]:
    """mean(x | group=1) - mean(x | group=0) and its standard error.

    Exactly 0 when x or group has no variation, including when x is empty.
    """
    x = np.asarray(x, dtype=float)
    group = np.asarray(group)
    if not _varies(x) or not _varies(group):
        return 0.0, 0.0
    x1, x0 = x[group == 1], x[group == 0]
    diff = float(x1.mean() - x0.mean())
    var1 = x1.var(ddof=1) if x1.size > 1 else 0.0
    var0 = x0.var(ddof=1) if x0.size > 1 else 0.0
    return diff, float(np.sqrt(var1 / x1.size + var0 / x0.size))


def covariance(x: np.ndarray, z: np.ndarray) -> tuple[float, float]:
    """Sample covariance and the standard error of the mean cross-product.

    Exactly 0 when either variable has no variation or fewer than 2 values.
    """
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if not _varies(x) or not _varies(z):
        return 0.0, 0.0
    products = (x - x.mean()) * (z - z.mean())
    n = products.size
    cov = float(products.sum() / (n - 1))
    return cov, float(products.std(ddof=1) / np.sqrt(n))


def _association(
    name: str, y: np.ndarray, group: np.ndarray, binary_outcome: bool, threshold: float
) -> DiagnosticStatistic:
    stat, se = mean_difference(y, group) if binary_outcome else covariance(y, group)
    return DiagnosticStatistic(name=name, statistic=stat, std_error=se, threshold=threshold)


def cross_world_diagnostic(
    units: Units, threshold: float = DEFAULT_THRESHOLD
) -> dict[int, DiagnosticStatistic]:
    """Association between Y(1, m) and M(0) for m = 0, 1.

    Binary Y uses the difference of conditional means, continuous Y the
    covariance. Zero in expectation when Y(1, m) and M(0) are independent.
    """
    batch = _as_batch(units)
    _require(batch)
    return {
        m: _association(
            f"y1{m}_vs_m0", batch.outcome(1, m), batch.m0, batch.is_binary, threshold
        )
        for m in (0, 1)
    }


def single_world_diagnostic(
    units: Units, assignments: Sequence[int] | np.ndarray, threshold: float = DEFAULT_THRESHOLD
) -> dict[str, DiagnosticStatistic]:
    """Single-world restrictions for every a and m.

    m{a}_vs_a: M(a) against A.
    y{a}{m}_vs_a: Y(a, m) against A.
    y{a}{m}_vs_m{a}_given_a{a}: Y(a, m) against M(a) among units with A = a.
    """
    batch = _as_batch(units)
    _require(batch)
    a = np.asarray(assignments)
    if a.shape != (len(batch),):
        raise InvalidInput("one assignment per unit is required")
    stats: dict[str, DiagnosticStatistic] = {}
    for arm in (0, 1):
        name = f"m{arm}_vs_a"
        stat, se = mean_difference(batch.mediator(arm), a)
        stats[name] = DiagnosticStatistic(name=name, statistic=stat, std_error=se, threshold=threshold)
    for arm in (0, 1):
        for m in (0, 1):
            name = f"y{arm}{m}_vs_a"
            stats[name] = _association(name, batch.outcome(arm, m), a, batch.is_binary, threshold)
    for arm in (0, 1):
        within = a == arm
        for m in (0, 1):
            name = f"y{arm}{m}_vs_m{arm}_given_a{arm}"
            stats[name] = _association(
                name,
                batch.outcome(arm, m)[within],
                batch.mediator(arm)[within],
                batch.is_binary,
                threshold,
            )
    return stats


def no_interaction_diagnostic(units: Units) -> float:
    """Mean absolute variation of Y(1, m) - Y(0, m) across m.

    Zero iff the unit-level direct effect does not depend on m for every unit.
    """
    batch = _as_batch(units)
    _require(batch)
    contrast_1 = batch.outcome(1, 1) - batch.outcome(0, 1)
    contrast_0 = batch.outcome(1, 0) - batch.outcome(0, 0)
    return float(np.abs(contrast_1 - contrast_0).mean())


def direct_effect_assumption_diagnostic(
    units: Units, threshold: float = DEFAULT_THRESHOLD
) -> dict[int, DiagnosticStatistic]:
    """mean[Y(1,m) - Y(0,m) | M(0)=m] - mean[Y(1,m) - Y(0,m)] for m = 0, 1.

    Raises:
        DegenerateStratum: no unit has M(0) = m for some m.
    """
    batch = _as_batch(units)
    _require(batch)
    gaps: dict[int, DiagnosticStatistic] = {}
    for m in (0, 1):
        inside = batch.m0 == m
        if not inside.any():
            raise DegenerateStratum(f"no units with M(0) = {m}")
        contrast = batch.outcome(1, m) - batch.outcome(0, m)
        name = f"direct_effect_m{m}"
        if np.ptp(contrast) == 0 or inside.all():
            gaps[m] = DiagnosticStatistic(name=name, statistic=0.0, std_error=0.0, threshold=threshold)
            continue
        # gap = (1 - share) * (mean inside - mean outside)
        share = inside.mean()
        diff, se = mean_difference(contrast, inside.astype(np.int8))
        gaps[m] = DiagnosticStatistic(
            name=name,
            statistic=float((1.0 - share) * diff),
            std_error=float((1.0 - share) * se),
            threshold=threshold,
        )
    return gaps


def run_audit(
    config: ModelConfig,
    n: int,
    seed: int,
    threshold: float = DEFAULT_THRESHOLD,
    p_treated: float = 0.5,
    block_size: Optional[int] = None,
) -> AuditReport:
    """Simulate a randomized population and run every diagnostic on it."""
    simulated = simulate_observed(config, n, seed, p_treated=p_treated, block_size=block_size)
    units = simulated.counterfactuals
    report = AuditReport(
        cw_assoc=cross_world_diagnostic(units, threshold),
        sw_assoc=single_world_diagnostic(units, simulated.assignments, threshold),
        b_variation=no_interaction_diagnostic(units),
        de_assump_gap=direct_effect_assumption_diagnostic(units, threshold),
        n=n,
        threshold=threshold,
    )
    logger.info(
        "audit_done",
        n=n,
        cross_world_passed=report.cross_world_passed,
        single_world_passed=report.single_world_passed,
    )
    return report
