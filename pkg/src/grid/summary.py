"""Bias summaries over grid results and the bias-versus-beta5 sweep."""

from collections.abc import Mapping, Sequence
from typing import Optional

import numpy as np
import pandas as pd

from ..config import get_quadrature_nodes
from ..models.config import PARAMETER_NAMES
from ..models.errors import InvalidInput
from ..models.grid import (
    BiasStratum,
    BiasSummary,
    GridResultRow,
    GridSpec,
    InteractionCell,
    SweepRow,
    WorstCaseRow,
)
from ..oracle.closed_form import evaluate_parameters
from ..utils.logging_config import get_logger
from .engine import GridResults

logger = get_logger(__name__)

DEFAULT_SWEEP_POINTS = 101


def _as_results(rows: GridResults | Sequence[GridResultRow]) -> GridResults:
    if isinstance(rows, GridResults):
        return rows
    return GridResults.from_rows(list(rows))


def _row(results: GridResults, position: int) -> GridResultRow:
    return results[int(position)]


def _worst_case(label: str, row: GridResultRow) -> WorstCaseRow:
    return WorstCaseRow(
        label=label,
        index=row.index,
        true_nde=row.true_nde,
        est_nde=row.est_nde,
        bias_nde=row.bias_nde,
        bounds_lower=row.bounds_lower,
        bounds_upper=row.bounds_upper,
        parameters=row.parameters(),
    )


def summarize_bias(rows: GridResults | Sequence[GridResultRow]) -> BiasSummary:
    """Bias ranges overall and by beta5 = 0 versus beta5 != 0, with worst cases.

    The worst case of a stratum is its row with the largest |bias_nde|; ties
    go to the lowest setting index. interaction holds max |bias_nde| for every
    (beta4, beta5) level pair.

    Raises:
        InvalidInput: rows is empty.
    """
    results = _as_results(rows)
    frame = results.frame
    if frame.empty:
        raise InvalidInput("cannot summarize an empty set of grid rows")
    abs_bias = frame["bias_nde"].abs()

    strata: list[BiasStratum] = []
    worst_cases: list[WorstCaseRow] = []
    for label, mask in (("beta5_zero", frame["beta5"] == 0.0), ("beta5_nonzero", frame["beta5"] != 0.0)):
        if not mask.any():
            continue
        part = frame.loc[mask, "bias_nde"]
        worst = _row(results, abs_bias[mask].idxmax())
        strata.append(
            BiasStratum(
                label=label,
                count=int(mask.sum()),
                bias_nde_min=float(part.min()),
                bias_nde_max=float(part.max()),
                max_abs_bias_nde=float(abs_bias[mask].max()),
                worst=worst,
            )
        )
        worst_cases.append(_worst_case(label, worst))

    pivot = (
        frame.assign(abs_bias=abs_bias)
        .groupby(["beta4", "beta5"], sort=True)["abs_bias"]
        .agg(["max", "count"])
        .reset_index()
    )
    interaction = [
        InteractionCell(
            beta4=float(r.beta4), beta5=float(r.beta5), max_abs_bias_nde=float(r["max"]), count=int(r["count"])
        )
        for _, r in pivot.iterrows()
    ]

    summary = BiasSummary(
        n_rows=len(frame),
        bias_nde_min=float(frame["bias_nde"].min()),
        bias_nde_max=float(frame["bias_nde"].max()),
        bias_nie_min=float(frame["bias_nie"].min()),
        bias_nie_max=float(frame["bias_nie"].max()),
        argmin=_row(results, frame["bias_nde"].idxmin()),
        argmax=_row(results, frame["bias_nde"].idxmax()),
        strata=strata,
        worst_cases=worst_cases,
        interaction=interaction,
    )
    logger.info(
        "bias_summarized",
        rows=summary.n_rows,
        bias_nde_min=summary.bias_nde_min,
        bias_nde_max=summary.bias_nde_max,
    )
    return summary


def sweep_values(grid_values: Sequence[float], points: int = DEFAULT_SWEEP_POINTS) -> np.ndarray:
    """Evenly spaced beta5 values over the grid's range, plus its own levels and 0 when in range."""
    levels = np.asarray(sorted(grid_values), dtype=float)
    lo, hi = float(levels[0]), float(levels[-1])
    values = np.concatenate([np.linspace(lo, hi, max(points, 2)), levels])
    if lo <= 0.0 <= hi:
        values = np.append(values, 0.0)
    return np.unique(values)


def interaction_sweep(
    worst: GridResultRow | Mapping[str, float],
    spec: GridSpec,
    points: int = DEFAULT_SWEEP_POINTS,
    nodes: Optional[int] = None,
) -> list[SweepRow]:
    """bias_nde as beta5 moves across its grid range, at the grid extremes of beta3 and beta4.

    alpha0..beta2 are held at the worst-case setting. Rows are ordered by
    beta3, then beta4, then beta5.
    """
    base = worst.parameters() if isinstance(worst, GridResultRow) else dict(worst)
    unknown = set(base) - set(PARAMETER_NAMES)
    if unknown:
        raise InvalidInput(f"unknown parameters: {sorted(unknown)}")
    values = spec.resolved_values()
    beta5 = sweep_values(values["beta5"], points)
    nodes = nodes or spec.nodes or get_quadrature_nodes()

    rows: list[SweepRow] = []
    for beta3 in sorted({min(values["beta3"]), max(values["beta3"])}):
        for beta4 in sorted({min(values["beta4"]), max(values["beta4"])}):
            setting = {**base, "beta3": beta3, "beta4": beta4}
            params = np.tile([setting.get(name, 0.0) for name in PARAMETER_NAMES], (beta5.size, 1))
            params[:, PARAMETER_NAMES.index("beta5")] = beta5
            arrays = evaluate_parameters(params, spec.outcome_kind, spec.u_mean, spec.u_sd, nodes)
            bias = arrays.true_nde - arrays.est_nde
            rows.extend(
                SweepRow(beta5=float(b5), beta3=float(beta3), beta4=float(beta4), bias_nde=float(b))
                for b5, b in zip(beta5, bias)
            )
    logger.info("sweep_done", rows=len(rows), points=int(beta5.size))
    return rows


def sweep_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in rows], columns=["beta5", "beta3", "beta4", "bias_nde"])
