"""Mediational g-formula from observed (A, M, Y) data."""

import math

import numpy as np

from ..models.counterfactuals import ObservedDataset
from ..models.errors import EmptyCell, PositivityViolation
from ..models.estimates import CellStats, EffectEstimates, EstimationMethod


def cell_sums(data: ObservedDataset) -> tuple[np.ndarray, np.ndarray]:
    """2x2 arrays of row counts and outcome sums per (a, m) cell.

    Sums are exactly rounded, so they do not depend on row order.
    """
    cell = 2 * data.a.astype(np.int64) + data.m.astype(np.int64)
    counts = np.bincount(cell, minlength=4).reshape(2, 2)
    sums = np.array([math.fsum(data.y[cell == k]) for k in range(4)]).reshape(2, 2)
    return counts, sums


def cell_statistics(data: ObservedDataset, strict: bool = True) -> CellStats:
    """Per-cell outcome means and mediator frequencies.

    Args:
        data: Observed dataset.
        strict: Raise on empty cells instead of returning them as NaN.

    Returns:
        CellStats with exact sample means and relative frequencies.

    Raises:
        EmptyCell: strict and some (a, m) cell has no rows.
    """
    counts, sums = cell_sums(data)
    stats = CellStats.from_sums(counts, sums)
    if strict and stats.empty_cells:
        raise EmptyCell(f"empty (a, m) cells: {stats.empty_cells}", stats.empty_cells)
    return stats


def gformula_from_cells(cells: CellStats, n: int | None = None) -> EffectEstimates:
    """NDE, NIE and TE from cell statistics.

    E{Y(1, M(0))} is estimated by sum_m mean_y[1][m] p(M=m | A=0); the
    single-world endpoints are the arm means.

    Raises:
        PositivityViolation: some (a, m) cell is empty.
    """
    if cells.empty_cells:
        raise PositivityViolation(
            f"g-formula needs all four (a, m) cells; empty: {cells.empty_cells}",
            cells.empty_cells,
        )
    ey_nested = sum(cells.mean_y[1][m] * cells.p_m_given_a(m, 0) for m in (0, 1))
    return EffectEstimates.from_means(
        ey_control=cells.mean_y_given_a[0],
        ey_nested=ey_nested,
        ey_treated=cells.mean_y_given_a[1],
        method=EstimationMethod.GFORMULA,
        n_or_nodes=cells.n if n is None else n,
    )


def estimate_gformula(data: ObservedDataset) -> EffectEstimates:
    """Mediational g-formula estimates of the natural effects."""
    return gformula_from_cells(cell_statistics(data, strict=False), len(data))
